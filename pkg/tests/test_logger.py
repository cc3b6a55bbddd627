import pytest
from resources.lib import logger


@pytest.fixture
def level():
    saved = logger.get_level()
    yield
    logger.set_level(saved)


def test_messages_go_to_stderr(level, capsys):
    logger.set_level(logger.LOGINFO)

    logger.info('hello')

    out, err = capsys.readouterr()
    assert out == ''
    assert err == '[jsnr] hello\n'


def test_threshold(level, capsys):
    logger.set_level(logger.LOGWARNING)

    logger.debug('hidden')
    logger.info('hidden')
    logger.warning('shown')
    logger.error('shown too')

    assert capsys.readouterr().err == '[jsnr] shown\n[jsnr] shown too\n'


def test_parse_level():
    assert logger._parse_level('debug') == logger.LOGDEBUG
    assert logger._parse_level(' ERROR ') == logger.LOGERROR
    assert logger._parse_level('25') == 25
    assert logger._parse_level('chatty') == logger.LOGINFO
