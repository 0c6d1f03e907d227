from importlib import resources


def fixture_path(name: str) -> str:
    """Absolute path of a bundled workspace fixture."""
    return str(resources.files("zsite").joinpath("fixtures", name))


FIXTURE_NAMES = [
    "poset2.json",
    "etale2.json",
    "chain3.json",
    "layered2.json",
    "modular.json",
    "fingerprint.json",
    "zlin.json",
    "failing.json",
    "malformed.json",
]
