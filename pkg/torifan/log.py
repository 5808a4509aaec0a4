import logging


def createCustomLogger(name):
    formatter = logging.Formatter(
        fmt='[%(asctime)s][%(levelname)s][%(module)s] %(message)s',
        datefmt='%m/%d %I:%M:%S%p',
    )

    logger = logging.getLogger(name)
    logger.setLevel(logging.INFO)

    # modules import each other repeatedly; one handler per logger
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False
    return logger


def setVerbosity(verbose):
    level = logging.DEBUG if verbose else logging.INFO
    for name, logger in logging.Logger.manager.loggerDict.items():
        if isinstance(logger, logging.Logger) and logger.handlers:
            logger.setLevel(level)
