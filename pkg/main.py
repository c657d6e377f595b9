import argparse
import logging
import sys
from typing import List, Optional

# Импортируем настройки из config
from config import LOG_LEVEL, TOOL_NAME, TOOL_VERSION

# Импорт функций для регистрации обработчиков
from handlers.denoise_handlers import register_denoise_handlers
from handlers.image_handlers import register_image_handlers
from handlers.metrics_handlers import register_metrics_handlers
from utils.errors import DenoiseError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME_ERROR = 1
EXIT_USAGE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description='Classical vs quantum-Boolean salt & pepper denoising on 8-bit PGM/PPM images.',
    )
    parser.add_argument('--version', action='version', version=f"{TOOL_NAME} {TOOL_VERSION}")
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    # Регистрация всех обработчиков
    register_image_handlers(subparsers)
    register_denoise_handlers(subparsers)
    register_metrics_handlers(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Точка входа CLI; возвращает код завершения (0, 1 или 2)."""
    # Логи идут в stderr, stdout остаётся для CSV/таблиц
    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse завершает работу сам: 2 при ошибке использования, 0 для --help
        return EXIT_USAGE_ERROR if e.code not in (0, None) else EXIT_OK

    try:
        logger.debug(f"Running '{args.command}'")
        return args.handler(args)
    except (DenoiseError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_RUNTIME_ERROR
    except Exception as e:
        logger.error(f"КРИТИЧЕСКАЯ ОШИБКА: {str(e)}")
        logger.exception("Детали ошибки:")
        return EXIT_RUNTIME_ERROR


if __name__ == '__main__':
    sys.exit(main())
