import os

from setuptools import find_packages, setup


def readme() -> str:
    """Lee el README.md para usarlo como `long_description`.

    Returns:
        Contenido del README.md de la raíz.
    """
    readme_path = os.path.join(os.path.dirname(__file__), "README.md")
    with open(readme_path, encoding="utf-8") as f:
        return f.read()


setup(
    name="quotient_lab",
    version="0.1.0",
    author="Your name (or your organization/company/team)",
    author_email="Your email (or your organization/company/team)",
    description=(
        "Laboratorio exacto de anillos de cocientes maximales y totales "
        "de anillos finitos."
    ),
    python_requires=">=3.10",
    license="",
    url="",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"quotient_lab": ["data/corpus/*.json"]},
    entry_points={"console_scripts": ["ql=quotient_lab.main:main"]},
    long_description=readme(),
    long_description_content_type="text/markdown",
)
