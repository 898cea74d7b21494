import os
import sys

# Project root on the import path so the script runs from anywhere
base_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, base_dir)

from core.repro_engine import format_report, repro_suite  # noqa: E402
from utils.data_handler import save_json_data, save_text  # noqa: E402
from utils.log import configure_logging  # noqa: E402
from utils.settings_manager import get_setting  # noqa: E402

JSON_PATH = os.path.join("data", "repro_report.json")
TEXT_PATH = os.path.join("data", "repro_report.txt")


def main(only=None) -> int:
    configure_logging(get_setting("log_level"))

    print("Running reproduction scenarios...")
    report = repro_suite(only)

    print("\n--- Report ---")
    text = format_report(report)
    print(text)
    print("--------------\n")

    save_json_data(JSON_PATH, report.model_dump(mode="json"))
    print(f"JSON saved to: {os.path.join(base_dir, JSON_PATH)}")
    save_text(TEXT_PATH, text)
    print(f"Text saved to: {os.path.join(base_dir, TEXT_PATH)}")

    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:] or None))
