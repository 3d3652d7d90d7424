from invoke import task


@task
def test(c, coverage=False):
    """Run the test suite"""
    if coverage:
        c.run("coverage run -m pytest && coverage report -m", pty=True)
    else:
        c.run("pytest -q", pty=True)


@task
def lint(c):
    """Run ruff and mypy over the package"""
    c.run("ruff check quotient_lab tests", pty=True)
    c.run("mypy quotient_lab --ignore-missing-imports", pty=True)


@task
def verify(c, corpus="", cap=10000):
    """Run the verification suite over the corpus"""
    corpus_arg = f"--corpus {corpus}" if corpus else ""
    print(f"Verifying corpus {corpus or '(builtin)'} with cap {cap}")
    c.run(f"ql verify {corpus_arg} --cap {cap}", pty=True)


@task
def report(c, fmt="md", out="", jobs=1):
    """Write the corpus run report"""
    out_arg = f"--out {out}" if out else ""
    c.run(f"ql report --format {fmt} --jobs {jobs} {out_arg}", pty=True)
