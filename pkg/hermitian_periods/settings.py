"""
Django settings for the hermitian_periods project.

The project has no web surface: Django supplies configuration, logging,
app discovery and the management-command runner used by periods_cli.
"""

import logging
from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = 'hermitian-periods-batch-only-key'

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'rest_framework',
    # Computation apps, ordered bottom-up
    'exact_algebra',
    'quadratic_symbols',
    'hermitian_lattices',
    'local_densities',
    'siegel_series',
    'series_identities',
    'global_assembly',
    'periods_cli',
]

# Nothing is persisted; sqlite in memory only satisfies Django's checks.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

REST_FRAMEWORK = {
    'COERCE_DECIMAL_TO_STRING': True,
    'UNAUTHENTICATED_USER': None,
}

# =============================================================================
# ENVIRONMENT OVERRIDES
# =============================================================================

try:
    import environ
    env = environ.Env(
        HP_ENUMERATION_BUDGET=(int, 2 ** 26),
        HP_DEFAULT_ORDER=(int, 4),
        HP_EULER_CUTOFF=(int, 10 ** 4),
        HP_REPORT_DIR=(str, str(BASE_DIR / 'run_reports')),
        HP_LOG_LEVEL=(str, 'INFO'),
    )

    env_file = BASE_DIR / '.env'
    if env_file.exists():
        environ.Env.read_env(env_file)

except ImportError:
    logging.getLogger(__name__).warning("django-environ not installed - using default settings")
    _defaults = {
        'HP_ENUMERATION_BUDGET': 2 ** 26,
        'HP_DEFAULT_ORDER': 4,
        'HP_EULER_CUTOFF': 10 ** 4,
        'HP_REPORT_DIR': str(BASE_DIR / 'run_reports'),
        'HP_LOG_LEVEL': 'INFO',
    }
    env = lambda key, default=None: type(_defaults[key])(os.environ.get(key, _defaults[key]))

# Computation settings
LATTICE_SETTINGS = {
    'ENUMERATION_BUDGET': env('HP_ENUMERATION_BUDGET'),
    'DEFAULT_ORDER': env('HP_DEFAULT_ORDER'),
    'MAX_ORDER': 8,
    'RAMIFIED_2_ORDER': 3,
    'CALIBRATION_RADIUS': 2,
    'RANKIN_TOLERANCE': 0.005,
    'EULER_CUTOFF': env('HP_EULER_CUTOFF'),
    'PADIC_PRECISION': 40,
    'CHUNK_SIZE': 2 ** 20,
    'REPORT_DIR': Path(env('HP_REPORT_DIR')),
    'CLASS_NUMBER_ONE': (3, 4, 7, 8, 11, 19, 43, 67, 163),
}

LOG_DIR = BASE_DIR / 'logs'
LOG_DIR.mkdir(exist_ok=True)
LOG_LEVEL = env('HP_LOG_LEVEL')

# Logging configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': 'DEBUG',
            'class': 'logging.FileHandler',
            'filename': LOG_DIR / 'hermitian_periods.log',
            'formatter': 'verbose',
        },
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console', 'file'],
        'level': 'INFO',
    },
    'loggers': {
        'django': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': False,
        },
        **{
            app: {
                'handlers': ['file', 'console'],
                'level': LOG_LEVEL,
                'propagate': False,
            }
            for app in (
                'exact_algebra',
                'quadratic_symbols',
                'hermitian_lattices',
                'local_densities',
                'siegel_series',
                'series_identities',
                'global_assembly',
                'periods_cli',
            )
        },
    },
}
