import os
from dotenv import load_dotenv

# Carregar variáveis de ambiente
load_dotenv()


class Config:
    """Configurações lidas do ambiente (também usada como config do Flask)"""

    SECRET_KEY = os.getenv('SECRET_KEY', 'urysohn-dev-secret')
    PORT = int(os.getenv('PORT', '5001'))

    # Paralelismo das varreduras particionáveis
    WORKERS = int(os.getenv('URYSOHN_WORKERS', '1'))

    # Limites de busca exaustiva (recusa explícita quando excedidos)
    ISO_BOUND = int(os.getenv('URYSOHN_ISO_BOUND', '10'))
    PAIRING_BOUND = int(os.getenv('URYSOHN_PAIRING_BOUND', '12'))
    ENUM_GUARD = int(os.getenv('URYSOHN_ENUM_GUARD', '5000000'))
    WORD_BOUND = int(os.getenv('URYSOHN_WORD_BOUND', '200000'))

    LOG_LEVEL = os.getenv('URYSOHN_LOG_LEVEL', 'WARNING')
    SERVICE_LOG_LEVEL = os.getenv('URYSOHN_SERVICE_LOG_LEVEL', 'INFO')


def bound(value, default):
    """Retorna o limite informado pelo chamador ou o padrão configurado"""
    return default if value is None else value
