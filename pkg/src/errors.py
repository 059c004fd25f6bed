import logging
from functools import wraps

import click
from flask import jsonify

logger = logging.getLogger(__name__)


class UrysohnError(Exception):
    """Erro base da biblioteca"""
    exit_code = 1
    http_status = 400


class InputError(UrysohnError):
    """Entrada inválida (exit 1)"""


class StructuralError(InputError):
    """Matriz malformada ou entrada fora de [0, q]"""


class PreconditionError(InputError):
    """Pré-condição da operação violada"""


class FormatError(InputError):
    """Arquivo ilegível ou sintaxe de palavra inválida"""


class EmptyComposition(PreconditionError):
    """Composição vazia: a cota de k não se aplica"""


class GuardRefusal(UrysohnError):
    """Limite de tamanho configurado excedido (exit 2)"""
    exit_code = 2
    http_status = 422

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InvariantBreach(UrysohnError):
    """Verificação interna falhou: indica bug (exit 3)"""
    exit_code = 3
    http_status = 500


def cli_errors(f):
    """Decorator para comandos click: converte erros em códigos de saída"""
    @wraps(f)
    def decorated(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except UrysohnError as e:
            if isinstance(e, GuardRefusal):
                logger.warning(f"Recusa por limite: {e}")
                if e.partial is not None:
                    click.echo(f'parcial: {e.partial}', err=True)
            click.echo(f'erro: {e}', err=True)
            raise click.exceptions.Exit(e.exit_code)
    return decorated


def api_errors(f):
    """Decorator para rotas: converte erros em respostas JSON"""
    @wraps(f)
    def decorated(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except UrysohnError as e:
            body = {'message': str(e)}
            if isinstance(e, GuardRefusal) and e.partial is not None:
                body['partial'] = str(e.partial)
            return jsonify(body), e.http_status
        except (KeyError, TypeError, ValueError) as e:
            return jsonify({'message': f'Dados inválidos: {str(e)}'}), 400
        except Exception as e:
            logger.error(f"Erro interno em {f.__name__}: {str(e)}", exc_info=True)
            return jsonify({'message': f'Erro interno: {str(e)}'}), 500
    return decorated
