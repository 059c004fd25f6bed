from waitress import serve

from src.config import Config
from src.main import app

if __name__ == '__main__':
    serve(app, host='0.0.0.0', port=Config.PORT)
