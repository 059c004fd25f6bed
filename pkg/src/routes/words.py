from flask import Blueprint, jsonify, request

from src.errors import api_errors
from src.graev import graev_distance, graev_norm_bruteforce, graev_norm_dp
from src.loaders import word_from_dict
from src.models.words import parse_word

words_bp = Blueprint('words', __name__)


@words_bp.route('/graev/norm', methods=['POST'])
@api_errors
def norm():
    """Seminorma de Graev de uma palavra"""
    data = request.get_json(silent=True)
    if not data:
        return jsonify({'message': 'Dados não fornecidos'}), 400
    alphabet, word = word_from_dict(data)
    value = graev_norm_bruteforce(word, alphabet) if data.get('oracle') else graev_norm_dp(word, alphabet)
    return jsonify({'value': f'{value}/{alphabet.denominator}'})


@words_bp.route('/graev/dist', methods=['POST'])
@api_errors
def dist():
    """Distância de Graev entre word e other"""
    data = request.get_json(silent=True)
    if not data or 'other' not in data:
        return jsonify({'message': 'Campos word e other são obrigatórios'}), 400
    alphabet, u = word_from_dict(data)
    v = alphabet.check_word(parse_word(data['other']))
    return jsonify({'value': f'{graev_distance(u, v, alphabet)}/{alphabet.denominator}'})
