import os
from dotenv import load_dotenv

load_dotenv()

TWOBRIDGE_MAX_Q = int(os.getenv("TWOBRIDGE_MAX_Q", "120"))
TWOBRIDGE_JOBS = int(os.getenv("TWOBRIDGE_JOBS", "0"))  # 0 means one worker per CPU
TWOBRIDGE_REPORT_PATH = os.getenv("TWOBRIDGE_REPORT_PATH", "verify_report.json")
TWOBRIDGE_FIXTURES_PATH = os.getenv("TWOBRIDGE_FIXTURES_PATH", "data/fixtures.csv")
TWOBRIDGE_CHUNKSIZE = int(os.getenv("TWOBRIDGE_CHUNKSIZE", "16"))
TWOBRIDGE_VERBOSE = os.getenv("TWOBRIDGE_VERBOSE", "1").lower() not in ("0", "false", "no", "")
