import os

ROOT_DIR = os.path.dirname(os.path.abspath(__file__))
HANDS_DIR = os.path.join(ROOT_DIR, "retarget", "hands")
SIM_FIXTURES_DIR = os.path.join(ROOT_DIR, "sim", "fixtures")
