import logging
import os
import sys

# DON'T CHANGE THIS !!!
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from flask import Flask, jsonify
from flask_cors import CORS

from src.config import Config
from src.routes.gh import gh_bp
from src.routes.spaces import spaces_bp
from src.routes.theta import theta_bp
from src.routes.words import words_bp

logger = logging.getLogger(__name__)


def create_app(config=Config):
    """Cria a aplicação Flask com as rotas JSON"""
    logging.basicConfig(level=getattr(logging, config.SERVICE_LOG_LEVEL.upper(), logging.INFO))

    app = Flask(__name__)
    app.config.from_object(config)

    # Configuração CORS para permitir acesso de outras ferramentas
    CORS(app, origins="*")

    app.register_blueprint(spaces_bp, url_prefix='/api')
    app.register_blueprint(theta_bp, url_prefix='/api')
    app.register_blueprint(words_bp, url_prefix='/api')
    app.register_blueprint(gh_bp, url_prefix='/api')

    @app.route('/api/health', methods=['GET'])
    def health():
        return jsonify({'status': 'ok'})

    logger.info("Aplicação criada")
    return app


app = create_app()

if __name__ == '__main__':
    app.run(host='0.0.0.0', port=Config.PORT, debug=True)
