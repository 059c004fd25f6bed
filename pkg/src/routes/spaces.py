from flask import Blueprint, jsonify, request

from src.errors import api_errors
from src.katetov import build_approximant, kappa_extend
from src.loaders import katetov_from_dict, space_from_ref
from src.metric_core import amalgam, shortest_path_completion, validate_space
from src.models.space import FiniteMetricSpace, PartialSpec

spaces_bp = Blueprint('spaces', __name__)


@spaces_bp.route('/spaces/validate', methods=['POST'])
@api_errors
def validate():
    """Valida um espaço"""
    data = request.get_json(silent=True)
    if not data:
        return jsonify({'message': 'Dados não fornecidos'}), 400
    return jsonify(validate_space(FiniteMetricSpace.from_dict(data)).to_dict())


@spaces_bp.route('/spaces/complete', methods=['POST'])
@api_errors
def complete():
    """Completa uma especificação parcial"""
    data = request.get_json(silent=True)
    if not data:
        return jsonify({'message': 'Dados não fornecidos'}), 400
    return jsonify(shortest_path_completion(PartialSpec.from_dict(data)).to_dict())


@spaces_bp.route('/spaces/amalgam', methods=['POST'])
@api_errors
def amalgam_route():
    """Amálgama de X e Y pela colagem informada"""
    data = request.get_json(silent=True)
    if not data or 'X' not in data or 'Y' not in data:
        return jsonify({'message': 'Campos X e Y são obrigatórios'}), 400
    glue = data.get('glue', {})
    return jsonify(amalgam(space_from_ref(data['X']), space_from_ref(data['Y']), glue).to_dict())


@spaces_bp.route('/katetov/extend', methods=['POST'])
@api_errors
def extend():
    """Extensão κ_Y de uma função de Katětov"""
    data = request.get_json(silent=True)
    if not data:
        return jsonify({'message': 'Dados não fornecidos'}), 400
    f = katetov_from_dict(data)
    g = kappa_extend(f.base, f)
    return jsonify({'support': list(g.support), 'values': list(g.values),
                    'denominator': g.base.denominator})


@spaces_bp.route('/approximants', methods=['POST'])
@api_errors
def approximant():
    """Constrói um aproximante a partir de uma semente"""
    data = request.get_json(silent=True)
    if not data or 'seed' not in data:
        return jsonify({'message': 'Campo seed é obrigatório'}), 400
    result = build_approximant(space_from_ref(data['seed']), int(data.get('s', 1)),
                               data.get('grid'), int(data.get('cap', 64)),
                               data.get('strategy', 'katetov'), int(data.get('rng_seed', 0)))
    return jsonify({'status': result.status, 'rounds': result.rounds,
                    'added': list(result.added), 'space': result.space.to_dict()})
