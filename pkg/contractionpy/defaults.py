import os
import warnings
from pathlib import Path

from contractionpy.utils.config import Config
from contractionpy.utils.formatting import str_to_bool

default_folder = str(Path.home())
config_default_path = os.path.join(default_folder, '.contractionpy-config')
cache_env_var = 'CONTRACTIONPY_CACHE_DIR'

report_formats = ['lines', 'csv', 'json']


def str_to_path(value):
    value = str(value).strip()
    if not value:
        return ''
    return os.path.abspath(os.path.expanduser(value))


def positive_int(value):
    value = int(value)
    if value < 1:
        raise ValueError(f'{value} is not a positive integer')
    return value


def report_format(value):
    value = str(value).strip().lower()
    if value not in report_formats:
        raise ValueError(f'{value} is not valid; choose from {report_formats}')
    return value


config_validator = {
    'enumeration': {
        'scale_ceiling': positive_int,
        'jobs': positive_int,
    },
    'search': {
        'budget': positive_int,
    },
    'cache': {
        'directory': str_to_path,
        'enabled': str_to_bool,
    },
    'report': {
        'format': report_format,
    },
}

config_default = {
    'enumeration': {
        'scale_ceiling': 8,
        'jobs': 1,
    },
    'search': {
        'budget': 10 ** 7,
    },
    'cache': {
        'directory': '',
        'enabled': True,
    },
    'report': {
        'format': 'lines',
    },
}

config_env = {
    ('cache', 'directory'): cache_env_var,
}


class ContractionConfig(Config):
    def __init__(self, fullpath=None, save_missing=True):
        self.default_fullpath = config_default_path
        self.defaults = config_default
        if fullpath is None:
            fullpath = self.default_fullpath
        super().__init__(fullpath, config_validator, config_env)
        missing = not os.path.isfile(fullpath)
        self.to_default(keep_existing=True)
        if missing and save_missing:
            try:
                self.save()
            except OSError as err:
                warnings.warn(f'could not write {fullpath} ({err}); using defaults in memory')

    def to_default(self, keep_existing=False):
        for section, options in self.defaults.items():
            if section not in self.sections:
                self.add_section(section)
            for option, value in options.items():
                if keep_existing and option in self.config[section]:
                    continue
                self.set(section, option, value)

    def reset(self):
        self.to_default()
        self.save()

    @property
    def scale_ceiling(self):
        return self.get('enumeration', 'scale_ceiling')

    @property
    def jobs(self):
        return self.get('enumeration', 'jobs')

    @property
    def budget(self):
        return self.get('search', 'budget')

    @property
    def cache_directory(self):
        if not self.get('cache', 'enabled'):
            return ''
        return self.get('cache', 'directory')
