import json
from fractions import Fraction

import pytest

import ergolab

Z3 = {
    "dim": 2,
    "space": {"points": ["0", "1", "2"], "weights": ["1/3", "1/3", "1/3"]},
    "generators": [[1, 2, 0], [2, 0, 1]],
}


def test_recurrence_z3():
    limit, witness = ergolab.recurrence_certificate(Z3, [0])
    assert limit == Fraction(1, 9)
    assert witness == 3


def test_furstenberg_joining_z4():
    z4 = {
        "dim": 2,
        "space": {"weights": ["1/4"] * 4},
        "generators": [[1, 2, 3, 0], [2, 3, 0, 1]],
    }
    mass, period = ergolab.furstenberg_joining(z4)
    assert period == 4
    assert mass[(0, 0)] == Fraction(1, 16)
    assert sum(mass.values()) == 1


def test_line_free_extremals():
    assert ergolab.max_line_free(2, 3)[0] == 3
    size, words, exhaustive = ergolab.max_line_free(3, 2)
    assert size == 6 and exhaustive and len(words) == 6
    assert ergolab.line_count(3, 2) == 7


def test_correspondence():
    mu = ergolab.build_correspondence(["12", "21"], 2, 2, 1)
    assert mu == {"01": Fraction(1, 2), "10": Fraction(1, 2)}


def test_validate_and_errors():
    ergolab.validate(Z3)
    bad = dict(Z3, generators=[[1, 0, 2], [1, 2, 0]])
    with pytest.raises(ValueError, match="generators 0 and 1"):
        ergolab.validate(bad)
    with pytest.raises(ergolab.ErgolabError):
        ergolab.build_correspondence(["13"], 2, 2, 1)


def test_cli_run():
    code, report, _ = ergolab.run("dhj", "maxfree", "-k", "2", "-N", "4")
    assert code == 0
    assert report["results"]["size"] == 6
    code, report, err = ergolab.run("dhj", "maxfree", "-k", "11", "-N", "1")
    assert code == 3 and report["error"]
    assert json.loads(json.dumps(report)) == report
