import os
import yaml
from pathlib import Path
import logging

log = logging.getLogger(__name__)

# Repository root (the directory holding config/ and fixtures/)
PROJECT_ROOT = Path(__file__).resolve().parent.parent

FIXTURES_ENV = 'CONCKIT_FIXTURES'


def deep_merge(base, overlay):
    """Recursively merge two dictionaries; overlay values take precedence."""
    if not isinstance(base, dict) or not isinstance(overlay, dict):
        return overlay

    result = base.copy()
    for key, value in overlay.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = deep_merge(result[key], value)
        else:
            result[key] = value
    return result


def apply_env_overrides(config):
    ''' Apply environment variable overrides on top of the merged file configuration.

        :param dict config: merged configuration

        :return: new configuration dict
    '''
    fixtures_dir = os.environ.get(FIXTURES_ENV)
    if fixtures_dir:
        log.info(f'Fixture directory overridden by {FIXTURES_ENV}: {fixtures_dir}')
        # relative to the working directory, not the repo
        resolved = str(Path(fixtures_dir).resolve())
        config = deep_merge(config, {'fixtures': {'directory': resolved}})
    return config


def load_config(config_name=None, base_path=None):
    '''Load and merge default.yaml with an optional named overlay YAML, then environment overrides.'''
    config_dir = Path(base_path or PROJECT_ROOT)/'config'

    default_path = config_dir/'default.yaml'
    if not default_path.exists():
        raise FileNotFoundError(f'Required base config missing: {default_path}')

    config = yaml.safe_load(default_path.read_text()) or {}

    if config_name:
        specific_path = config_dir/f'{config_name}.yaml'
        if specific_path.exists():
            log.info(f'Loading specific config: {specific_path}')
            specific_data = yaml.safe_load(specific_path.read_text()) or {}
            config = deep_merge(config, specific_data)
        else:
            log.warning(f'{config_name}.yaml not found at {specific_path}. Using default.')

    return apply_env_overrides(config)


def fixtures_path(config):
    ''' Resolve the fixture file named by the configuration.

        :param dict config: merged configuration

        :return: Path to the fixture JSON file
    '''
    fixtures = config.get('fixtures', {})
    directory = Path(fixtures.get('directory', 'fixtures'))
    if not directory.is_absolute():
        directory = PROJECT_ROOT/directory
    return directory/fixtures.get('file', 'knots.json')
