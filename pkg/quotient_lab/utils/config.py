# quotient_lab/utils/config.py
import os
from pathlib import Path

from dotenv import load_dotenv

# Cargar variables de entorno desde el archivo .env
load_dotenv()

# Directorio base del paquete
BASE_DIR = Path(__file__).resolve().parent.parent

# Directorios de datos
DATA_DIR = BASE_DIR / "data"
CORPUS_DIR = DATA_DIR / "corpus"
BUILTIN_CORPUS = CORPUS_DIR / "builtin.json"

# Límites de enumeración
QL_CAP = int(os.getenv("QL_CAP", "10000"))
QL_IDEAL_CAP = int(os.getenv("QL_IDEAL_CAP", "100000"))

# Guardas de tamaño para listados exhaustivos
QL_HOM_LISTING_LIMIT = int(os.getenv("QL_HOM_LISTING_LIMIT", "4096"))
QL_ELEMENT_LIMIT = int(os.getenv("QL_ELEMENT_LIMIT", "4096"))

# Configuración de logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("LOG_FILE", "")
