from flask import Blueprint, jsonify, request

from src.errors import api_errors
from src.gh import gh_en_formula, gh_en_oracle
from src.loaders import instance_from_dict

gh_bp = Blueprint('gh', __name__)


@gh_bp.route('/gh/dist', methods=['POST'])
@api_errors
def dist():
    """Distância GH enumerada (fórmula ou oráculo)"""
    data = request.get_json(silent=True)
    if not data:
        return jsonify({'message': 'Dados não fornecidos'}), 400
    inst = instance_from_dict(data)
    value = gh_en_oracle(inst) if data.get('oracle') else gh_en_formula(inst)
    return jsonify({'value': str(value)})
