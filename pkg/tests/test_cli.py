import json

import pytest

from gsp4kit import cli, ff, gsp4core, primes


def run_json(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_suzuki_exit_zero(capsys):
    code, payload = run_json(capsys, ["suzuki", "--prime", "281", "--rmax", "200"])
    assert code == 0
    assert payload["divisible_r"] == [70, 140]
    assert payload["divisible_odd_r"] == []


def test_suzuki_table(capsys):
    code = cli.run(["suzuki", "--prime", "281", "--rmax", "200", "--table"])
    assert code == 0
    out = capsys.readouterr().out
    assert "281" in out and "[70, 140]" in out


def test_induce_exit_zero(capsys):
    code, payload = run_json(
        capsys, ["induce", "--p", "13", "--q", "5", "--ell", "3"])
    assert code == 0
    assert payload["order"] == 104
    assert payload["irreducible"] is True
    assert payload["element_orders"]["13"] == 12


def test_induce_usage_error(capsys):
    # ell = p is a parameter clash: usage error, JSON error on stderr
    code = cli.run(["induce", "--p", "13", "--q", "5", "--ell", "13"])
    assert code == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "PrimeClash"


def test_missing_required_flag_is_usage_error(capsys):
    assert cli.run(["induce", "--p", "13"]) == 2
    capsys.readouterr()


def test_unknown_command_is_usage_error(capsys):
    assert cli.run(["frobnicate"]) == 2
    capsys.readouterr()


def test_primes_pair(capsys):
    code, payload = run_json(capsys, ["primes", "pair", "--N", "1"])
    assert code == 0
    assert (payload["p"], payload["q"]) == (13, 5)


def test_primes_quad_and_verify(tmp_path, capsys):
    code, payload = run_json(capsys, ["primes", "quad", "--N", "1", "--k", "1"])
    assert code == 0
    assert payload["p_prime"] == 281
    cert_path = tmp_path / "cert.json"
    cert_path.write_text(json.dumps(payload))
    code, report = run_json(capsys, ["primes", "verify", "--cert", str(cert_path)])
    assert code == 0
    assert report["ok"] is True


def test_primes_verify_tampered_exit_one(tmp_path, capsys):
    cert = primes.search_quad(1, 1).to_json()
    cert["q"] += 4
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cert))
    code, report = run_json(capsys, ["primes", "verify", "--cert", str(path)])
    assert code == 1
    assert report["ok"] is False


def test_primes_quad_usage_error_on_281_multiple(capsys):
    code = cli.run(["primes", "quad", "--N", "562", "--k", "1"])
    assert code == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "PrimeClash"


def test_classify_default_generators(capsys):
    code, payload = run_json(capsys, ["classify", "--field", "2"])
    assert code == 0
    assert payload["group_order"] == 720
    assert "ContainsSp(1)" in payload["cases"]


def test_classify_generator_file(tmp_path, capsys):
    spec = ff.make_field(3, 1)
    gens = gsp4core.sp4_transvection_generators(spec)
    path = tmp_path / "gens.json"
    path.write_text(json.dumps(gsp4core.generators_to_json(spec, gens)))
    code, payload = run_json(
        capsys, ["classify", "--field", "3", "--generators", str(path)])
    assert code == 0
    assert payload["group_order"] == 51840


def test_classify_field_mismatch(tmp_path, capsys):
    spec = ff.make_field(3, 1)
    gens = gsp4core.sp4_transvection_generators(spec)
    path = tmp_path / "gens.json"
    path.write_text(json.dumps(gsp4core.generators_to_json(spec, gens)))
    code = cli.run(["classify", "--field", "5", "--generators", str(path)])
    assert code == 2
    capsys.readouterr()


def test_classify_bad_field(capsys):
    assert cli.run(["classify", "--field", "6"]) == 2
    capsys.readouterr()


def test_screen_synthetic_generic(capsys):
    code, payload = run_json(
        capsys, ["screen", "--system", "synthetic:generic",
                 "--ell-min", "7", "--ell-max", "31"])
    assert code == 0
    assert [e["ell"] for e in payload["entries"]] == [7, 11, 13, 17, 19, 23, 29, 31]


def test_screen_synthetic_trivial_table(capsys):
    code = cli.run(["screen", "--system", "synthetic:trivial",
                    "--ell-min", "7", "--ell-max", "13", "--table"])
    assert code == 0
    out = capsys.readouterr().out
    assert "PossiblyReducible" in out


def test_screen_unknown_synthetic(capsys):
    assert cli.run(["screen", "--system", "synthetic:nonsense"]) == 2
    capsys.readouterr()


def test_screen_missing_file(capsys):
    assert cli.run(["screen", "--system", "/nonexistent/sys.json"]) == 2
    capsys.readouterr()


def test_screen_seed_determinism(capsys):
    args = ["screen", "--system", "synthetic:generic",
            "--ell-min", "7", "--ell-max", "31", "--seed", "42"]
    code1, p1 = run_json(capsys, args)
    code2, p2 = run_json(capsys, args)
    assert code1 == code2 == 0
    assert p1 == p2
    _, p3 = run_json(capsys, args[:-1] + ["43"])
    assert p3 != p1
