from flask import Blueprint, jsonify, request

from src.errors import api_errors
from src.loaders import matrix_from_dict, space_from_ref
from src.semigroup import classify_idempotents, idempotent_bF, is_invertible, product, star

theta_bp = Blueprint('theta', __name__)


def _matrix_body(f):
    return {'points': list(f.base.points), 'denominator': f.base.denominator,
            'entries': [list(row) for row in f.entries]}


@theta_bp.route('/theta/product', methods=['POST'])
@api_errors
def product_route():
    """Produto f•g"""
    data = request.get_json(silent=True)
    if not data or 'a' not in data or 'b' not in data:
        return jsonify({'message': 'Campos a e b são obrigatórios'}), 400
    return jsonify(_matrix_body(product(matrix_from_dict(data['a']), matrix_from_dict(data['b']))))


@theta_bp.route('/theta/star', methods=['POST'])
@api_errors
def star_route():
    data = request.get_json(silent=True)
    if not data:
        return jsonify({'message': 'Dados não fornecidos'}), 400
    return jsonify(_matrix_body(star(matrix_from_dict(data))))


@theta_bp.route('/theta/bf', methods=['POST'])
@api_errors
def bf_route():
    """Idempotente b_F"""
    data = request.get_json(silent=True)
    if not data or 'space' not in data:
        return jsonify({'message': 'Campo space é obrigatório'}), 400
    return jsonify(_matrix_body(idempotent_bF(space_from_ref(data['space']), data.get('F', []))))


@theta_bp.route('/theta/classify', methods=['POST'])
@api_errors
def classify_route():
    """Classificação dos idempotentes >= d"""
    data = request.get_json(silent=True)
    if not data or 'space' not in data:
        return jsonify({'message': 'Campo space é obrigatório'}), 400
    found = classify_idempotents(space_from_ref(data['space']), data.get('grid'))
    return jsonify([{'F': list(subset), **_matrix_body(p)} for p, subset in found])


@theta_bp.route('/theta/invert', methods=['POST'])
@api_errors
def invert_route():
    data = request.get_json(silent=True)
    if not data:
        return jsonify({'message': 'Dados não fornecidos'}), 400
    f = matrix_from_dict(data)
    phi = is_invertible(f)
    if phi is None:
        return jsonify({'invertible': False})
    return jsonify({'invertible': True,
                    'isometry': {f.base.points[i]: f.base.points[j] for i, j in enumerate(phi)}})
