"""
Django settings for the netprofiler project.

Only the management commands read these values; the analysis library takes
every parameter explicitly.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')

# No HTTP surface is served; the key only satisfies Django's checks.
SECRET_KEY = os.environ.get('NETPROFILER_SECRET_KEY', 'netprofiler-batch-only-not-secret')

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'graphs',
    'ingest',
    'rewire',
    'smallworld',
    'degreedist',
    'synth',
    'pipeline',
]


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('NETPROFILER_DB', BASE_DIR / 'netprofiler.sqlite3'),
    }
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Analysis defaults. Each key can be overridden by NETPROFILER_<KEY>.

def _from_env(key, default):
    raw = os.environ.get(f'NETPROFILER_{key}')
    if raw is None:
        return default
    if isinstance(default, bool):
        return raw.strip().lower() in ('1', 'true', 'yes', 'on')
    return type(default)(raw)


NETPROFILER = {
    key: _from_env(key, default)
    for key, default in {
        'SEED': 0,
        'WORKERS': 1,
        'SWAPS_PER_EDGE': 10,
        'LATTICE_SWAPS_PER_EDGE': 20,
        'CONNECTIVITY_GUARD': True,
        'REALIZATIONS': 8,
        'BOOTSTRAP': 1000,
        'GOF_THRESHOLD': 0.1,
        'SIGNIFICANCE': 0.1,
        'OMEGA_BAND': 0.5,
        'DEGENERATE_RATIO_L': 0.5,
        'DEGENERATE_RATIO_T': 0.1,
        'SIZE_CAP_NODES': 50_000,
        'SIZE_CAP_EDGES': 500_000,
        'TRANSITIVITY_MODE': 'mean-local',
        'TAIL_FLOOR': 10,
        'LABEL_DIAGNOSTIC': False,
        'CLASSES_FILE': 'classes.json',
    }.items()
}


# Logging

LOG_LEVEL = os.environ.get('NETPROFILER_LOG_LEVEL', 'INFO').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('graphs', 'ingest', 'rewire', 'smallworld', 'degreedist', 'synth', 'pipeline')
    },
}
