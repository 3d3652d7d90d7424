# quotient_lab/main.py
from quotient_lab.application.cli import cli


def main():
    cli(prog_name="ql")


if __name__ == "__main__":
    main()
