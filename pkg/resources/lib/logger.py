import os
import sys

LOGDEBUG = 10
LOGINFO = 20
LOGWARNING = 30
LOGERROR = 40

_appid = 'jsnr'
_level_names = {
    'DEBUG': LOGDEBUG,
    'INFO': LOGINFO,
    'WARNING': LOGWARNING,
    'ERROR': LOGERROR,
}


def _parse_level(value: str) -> int:
    value = value.strip().upper()
    if value in _level_names:
        return _level_names[value]
    try:
        return int(value)
    except ValueError:
        return LOGINFO


_threshold = _parse_level(os.environ.get('JSNR_LOG_LEVEL', 'INFO'))


def set_level(level: int) -> None:
    global _threshold
    _threshold = level


def get_level() -> int:
    return _threshold


def log_print(message: str, level: int) -> None:
    # stdout is reserved for JSON reports
    if level >= _threshold:
        print(f'[{_appid}] {message}', file=sys.stderr)


def debug(message: str) -> None:
    log(message, LOGDEBUG)


def info(message: str) -> None:
    log(message, LOGINFO)


def warning(message: str) -> None:
    log(message, LOGWARNING)


def error(message: str) -> None:
    log(message, LOGERROR)


log = log_print
