import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'hermitian_periods.settings')
django.setup()
