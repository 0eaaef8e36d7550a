from .cli import app


def main():
    """Entry point for the `frame-soliton` console script."""
    app()


if __name__ == "__main__":
    main()
