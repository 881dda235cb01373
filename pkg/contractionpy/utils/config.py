import configparser
import os
from copy import deepcopy


class Config(object):
    """
        Sectioned key/value settings stored in an ini file.

        Raw strings are read with configparser and converted per option by
        the validators. Options may also be overridden by environment
        variables, which take precedence over the file but never get saved.

        ...

        Parameters
        ----------
        fullpath : str or None
            path to the file. If None, nothing is read.
        validators : dict, optional
            {section: {option: callable}} converting raw strings
            (e.g. int, str_to_bool)
        env_overrides : dict, optional
            {(section, option): ENV_VAR_NAME}

        Attributes
        ----------
        fullpath : str
        config : dict
            validated values of each option of each section
        configparser : configparser.ConfigParser
        validators : dict
        env_overrides : dict

        Methods
        -------
        load()
            read .fullpath and validate
        save(fullpath=None)
            write the current values (without environment overrides)
        get(section, option)
            value of an option, environment override first
        set(section, option, value)
            validated assignment
        add_section(section)
    """

    def __init__(self, fullpath=None, validators=None, env_overrides=None):
        self.configparser = configparser.ConfigParser()
        self.validators = validators if validators is not None else {}
        self.env_overrides = env_overrides if env_overrides is not None else {}
        self.config = {}
        self.fullpath = fullpath
        if fullpath and os.path.isfile(fullpath):
            self.load()

    def load(self):
        self.configparser.read(self.fullpath)
        self.config = deepcopy({sec: dict(self.configparser[sec]) for sec in self.configparser.sections()})
        for section in self.sections:
            for option, value in self.config[section].items():
                self.config[section][option] = self.validate(section, option, value)

    def validate(self, section, option, value):
        validator = self.validators.get(section, {}).get(option)
        if validator is None:
            return value
        return validator(value)

    @property
    def sections(self):
        return list(self.config.keys())

    def get_options(self, section):
        return self.config[section]

    def get(self, section, option):
        env_name = self.env_overrides.get((section, option))
        if env_name and os.environ.get(env_name):
            return self.validate(section, option, os.environ[env_name])
        return self.config[section][option]

    def set(self, section, option, value):
        if section not in self.sections:
            self.add_section(section)
        self.config[section][option] = self.validate(section, option, value)

    def add_section(self, section):
        if section not in self.sections:
            self.config[section] = {}

    def save(self, fullpath=None):
        if fullpath is not None:
            self.fullpath = fullpath
        parser = configparser.ConfigParser()
        for sec in self.sections:
            parser[sec] = {key: str(value) for key, value in self.config[sec].items()}
        with open(self.fullpath, 'w') as file:
            parser.write(file)
        self.configparser = parser

    def preview(self):
        print(self.__repr__())

    def __repr__(self):
        lines = [f'{self.__class__.__name__}({self.fullpath})']
        for sec in self.sections:
            lines.append(f'[{sec}]')
            for key, value in self.config[sec].items():
                lines.append(f'{key} = {value}')
        return '\n'.join(lines)

    def __str__(self):
        return self.__repr__()
