"""
Django settings for the apntri project.

Batch verification toolkit for the trivariate families G_a and H_a over
binary fields. There is no web surface; the project exists to host the
management commands, the Celery app and the shared configuration.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.0/ref/settings/
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='apntri-local-only-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',

    # Third party
    'rest_framework',

    # Local apps
    'gf2m',
    'univariate',
    'trivariate',
    'checkers',
    'params',
    'equivalence',
    'cli',
]

MIDDLEWARE = []


# Database
# Nothing is persisted; the sqlite entry keeps Django's test runner happy.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# REST Framework (serializers and JSONRenderer only)
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'COMPACT_JSON': True,
}


# Toolkit
APNTRI_THREADS = config('APNTRI_THREADS', default=1, cast=int)
APNTRI_CHUNK_SIZE = config('APNTRI_CHUNK_SIZE', default=1 << 16, cast=int)
APNTRI_CONTEXT_TAGS = config('APNTRI_CONTEXT_TAGS', default=DEBUG, cast=bool)
APNTRI_TABLE_M = config('APNTRI_TABLE_M', default=16, cast=int)

# Budget caps (largest m each method accepts)
APNTRI_MAX_IMAGE_M = config('APNTRI_MAX_IMAGE_M', default=10, cast=int)
APNTRI_MAX_KERNEL_M = config('APNTRI_MAX_KERNEL_M', default=9, cast=int)
APNTRI_MAX_EXHAUSTIVE_M = config('APNTRI_MAX_EXHAUSTIVE_M', default=5, cast=int)
APNTRI_MAX_H_CHECK_M = config('APNTRI_MAX_H_CHECK_M', default=5, cast=int)
APNTRI_MAX_DIAG_M = config('APNTRI_MAX_DIAG_M', default=7, cast=int)
APNTRI_MAX_EQUIV_M = config('APNTRI_MAX_EQUIV_M', default=7, cast=int)
APNTRI_MAX_GAMMA_M = config('APNTRI_MAX_GAMMA_M', default=13, cast=int)
APNTRI_EQUIV_BUDGET = config('APNTRI_EQUIV_BUDGET', default=10_000_000, cast=int)
# evaluations one permutation/APN sweep may run per form; 0 = uncapped
APNTRI_SCAN_BUDGET = config('APNTRI_SCAN_BUDGET', default=0, cast=int)


# Celery Configuration
CELERY_BROKER_URL = config('CELERY_BROKER_URL', default='memory://')
CELERY_RESULT_BACKEND = config('CELERY_RESULT_BACKEND', default='cache+memory://')
CELERY_TASK_ALWAYS_EAGER = config('CELERY_TASK_ALWAYS_EAGER', default=True, cast=bool)
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE


APNTRI_LOG_LEVEL = config('APNTRI_LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
        'detailed': {
            'format': '[{asctime}] {levelname} {name} {pathname}:{lineno} - {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple'
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': True,
        },
        'celery': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'gf2m': {
            'handlers': ['console'],
            'level': APNTRI_LOG_LEVEL,
            'propagate': False,
        },
        'univariate': {
            'handlers': ['console'],
            'level': APNTRI_LOG_LEVEL,
            'propagate': False,
        },
        'trivariate': {
            'handlers': ['console'],
            'level': APNTRI_LOG_LEVEL,
            'propagate': False,
        },
        'checkers': {
            'handlers': ['console'],
            'level': APNTRI_LOG_LEVEL,
            'propagate': False,
        },
        'params': {
            'handlers': ['console'],
            'level': APNTRI_LOG_LEVEL,
            'propagate': False,
        },
        'equivalence': {
            'handlers': ['console'],
            'level': APNTRI_LOG_LEVEL,
            'propagate': False,
        },
        'cli': {
            'handlers': ['console'],
            'level': APNTRI_LOG_LEVEL,
            'propagate': False,
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    }
}
