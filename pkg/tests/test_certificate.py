"""Certificates verify, and any single tampered witness or verdict is rejected."""
import copy
import json

import pytest

from certificate import dumps, load_certificate, verify, write_certificate
from config.fixture_config import FixtureConfig
from errors import CertificateError
from services.engine_service import EngineService


def run_fixture(name):
    outcome = EngineService().run_file(FixtureConfig.path(name))
    assert outcome.status == "ok", outcome.message
    return outcome.certificate


@pytest.fixture(scope="module")
def cusp_certificate():
    return run_fixture("cusp_yx")


@pytest.fixture(scope="module")
def member_certificate():
    return run_fixture("member_cusp")


def claim(cert, role):
    return next(record for record in cert["claims"] if record["role"] == role)


def rejected(cert):
    try:
        return not verify(cert).ok
    except CertificateError:
        return True


def test_fresh_certificates_verify(cusp_certificate, member_certificate):
    for cert in (cusp_certificate, member_certificate):
        report = verify(copy.deepcopy(cert))
        assert report.ok, report.failures
        assert report.derived_verdict == cert["verdict"]


def test_certificate_header(cusp_certificate):
    assert cusp_certificate["schema"] == 1
    assert cusp_certificate["engine"] == {"name": "snk", "version": "0.3.0"}
    assert cusp_certificate["task"] == "regulous-check"
    assert cusp_certificate["verdict"] == "Regulous"
    assert cusp_certificate["counters"]["spairs"] > 0
    assert cusp_certificate["result"]["relation"] == "t^2 - x"


def _set(role, *path, value):
    def tamper(cert):
        target = claim(cert, role)
        for key in path[:-1]:
            target = target[key]
        target[path[-1]] = value
    return tamper


def _replace_problem(cert):
    cert["problem"] = cert["problem"].replace("-x^3 + y^2", "-x^5 + y^2")


def _drop_claim(role):
    def tamper(cert):
        cert["claims"] = [record for record in cert["claims"] if record["role"] != role]
    return tamper


def _perturb_first_quotient(role):
    def tamper(cert):
        quotients = claim(cert, role)["witness"]["quotients"]
        key = sorted(quotients)[0]
        quotients[key] = f"({quotients[key]}) + 1"
    return tamper


def _shorten_result(role):
    def tamper(cert):
        record = claim(cert, role)
        record["result"] = record["result"][:-1]
    return tamper


def _extra_generator(role):
    def tamper(cert):
        claim(cert, role)["generators"].append("x")
    return tamper


REGULOUS_TAMPERS = {
    "verdict": lambda cert: cert.update(verdict="NotRegulous"),
    "task": lambda cert: cert.update(task="member"),
    "schema": lambda cert: cert.update(schema=2),
    "engine": lambda cert: cert.update(engine={"name": "other", "version": "1"}),
    "claims-type": lambda cert: cert.update(claims="none"),
    "problem": _replace_problem,
    "holds-in-ring": _set("in-ring:t", "holds", value=True),
    "holds-dominant": _set("dominant:0", "holds", value=False),
    "element": _set("finite:t", "element", value="t^2 + x"),
    "row-poly": lambda cert: claim(cert, "graph")["witness"]["trace"]["rows"][0].update(poly="x"),
    "row-scale": lambda cert: claim(cert, "graph")["witness"]["trace"]["rows"][0].update(scale="2"),
    "row-bad-scale": lambda cert: claim(cert, "graph")["witness"]["trace"]["rows"][0].update(scale="abc"),
    "row-origin": lambda cert: claim(cert, "graph")["witness"]["trace"]["rows"][0].update(origin=["gen", 99]),
    "row-magic-origin": lambda cert: claim(cert, "graph")["witness"]["trace"]["rows"][0].update(origin=["magic"]),
    "minimal": lambda cert: claim(cert, "graph")["witness"]["trace"].update(minimal=[]),
    "result": _shorten_result("graph"),
    "generators": _extra_generator("graph"),
    "unreadable": lambda cert: claim(cert, "graph")["generators"].__setitem__(0, "x +"),
    "kind": _set("graph", "kind", value="bogus"),
    "quotients": _perturb_first_quotient("injective:t"),
    "radical-of": _set("injective:t", "radical_of", value="x"),
    "radical-target": _set("injective:t", "target", value="0"),
    "source": _set("image", "source", value="nowhere"),
    "missing-finite": _drop_claim("finite:t"),
    "duplicate": lambda cert: cert["claims"].append(copy.deepcopy(cert["claims"][-1])),
}


@pytest.mark.parametrize("name", sorted(REGULOUS_TAMPERS))
def test_tampered_regulous_certificate_is_rejected(cusp_certificate, name):
    cert = copy.deepcopy(cusp_certificate)
    REGULOUS_TAMPERS[name](cert)
    assert rejected(cert)


def test_tampered_membership_target_is_rejected(member_certificate):
    cert = copy.deepcopy(member_certificate)
    claim(cert, "member")["target"] = "y^4 - x^5"
    assert rejected(cert)


def test_non_membership_remainder_is_checked():
    # the failing injectivity claim is witnessed by a basis and the remainder of 1
    cert = run_fixture("sextic_yx2")
    assert verify(copy.deepcopy(cert)).ok
    failing = next(r for r in cert["claims"] if r["kind"] == "membership" and not r["holds"])
    failing["witness"]["remainder"] = "0"
    assert rejected(cert)


def test_certificates_are_deterministic_apart_from_the_timestamp(cusp_certificate):
    again = run_fixture("cusp_yx")
    first, second = dict(cusp_certificate), dict(again)
    first.pop("created")
    second.pop("created")
    assert dumps(first) == dumps(second)


def test_nullstellensatz_cofactors_are_rechecked():
    cert = run_fixture("cusp_nullstellensatz")
    assert cert["verdict"] == "Witness"
    assert cert["result"]["exponent"] == 2
    assert verify(copy.deepcopy(cert)).ok
    cert["result"]["cofactors"][0] = f"({cert['result']['cofactors'][0]}) + 1"
    assert rejected(cert)


def test_quotient_certificate_checks_the_division():
    cert = run_fixture("quotient_axes")
    assert cert["result"]["quotient"] == ["x*y"]
    assert verify(copy.deepcopy(cert)).ok
    cert["result"]["quotient"] = ["y"]
    assert rejected(cert)


def test_files_round_trip(tmp_path, member_certificate):
    path = tmp_path / "member.cert.json"
    write_certificate(str(path), member_certificate)
    text = path.read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert list(json.loads(text)) == sorted(member_certificate)
    assert verify(load_certificate(str(path))).ok


def test_unreadable_certificate_files(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(CertificateError):
        load_certificate(str(broken))
    with pytest.raises(CertificateError):
        load_certificate(str(tmp_path / "absent.json"))
    with pytest.raises(CertificateError):
        verify([])


@pytest.mark.parametrize("name", ["sextic_yx2", "swan_cusp", "swan_scan_cusp"])
def test_negative_verdicts_backed_by_non_membership_verify(name):
    cert = run_fixture(name)
    report = verify(copy.deepcopy(cert))
    assert report.ok, report.failures
    assert report.derived_verdict == cert["verdict"]


# -- results must be the ones the claims establish -------------------------------------------------


def _swap_fraction(cert):
    assert "fraction: y / x" in cert["problem"]
    cert["problem"] = cert["problem"].replace("fraction: y / x", "fraction: x / y")


RESULT_TAMPERS = {
    "cusp_yx": {
        "relation": lambda cert: cert["result"].update(relation="t^2 - y"),
        "graph": lambda cert: cert["result"].update(graph=["t - 7"]),
        "value": lambda cert: cert["result"].update(value="x"),
        "fraction": _swap_fraction,
    },
    "twisted_cubic_gb": {
        "basis": lambda cert: cert["result"].update(basis=cert["result"]["basis"][:-1]),
    },
    "twisted_cubic_eliminate": {
        "ring": lambda cert: cert["result"].update(ring=["x", "y", "z"]),
        "result": lambda cert: cert["result"].update(result=["y"]),
    },
    "saturate_axes": {
        "result": lambda cert: cert["result"].update(result=["x"]),
        "divisor": lambda cert: cert.update(problem=cert["problem"].replace("by: x", "by: y")),
    },
    "cusp_conductor": {
        "unit": lambda cert: cert["result"].update(conductor=["1"]),
        "degree": lambda cert: cert["result"].update(degree=1),
        "missing-power": _drop_claim("conductor:0.1"),
    },
    "swan_cusp": {
        "value": lambda cert: cert["result"].update(value="x"),
    },
    "swan_scan_cusp": {
        "pair": lambda cert: cert["result"]["pairs"][0].__setitem__(0, "x"),
        "extra-pair": lambda cert: cert["result"]["pairs"].append(["y", "x"]),
    },
}


@pytest.fixture(scope="module")
def result_certificates():
    return {name: run_fixture(name) for name in RESULT_TAMPERS}


@pytest.mark.parametrize("fixture, name", [(f, n) for f, tampers in RESULT_TAMPERS.items() for n in sorted(tampers)])
def test_tampered_result_is_rejected(result_certificates, fixture, name):
    cert = copy.deepcopy(result_certificates[fixture])
    assert verify(copy.deepcopy(cert)).ok
    RESULT_TAMPERS[fixture][name](cert)
    assert rejected(cert)
