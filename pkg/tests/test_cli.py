"""CLI round trips, exit codes, and determinism."""

import json

import pytest

from polylin.cli import main
from polylin import serialize
from polylin.bases import Bernstein, Lagrange, MatrixPolynomial, Monomial


def write_json(path, obj):
    path.write_text(json.dumps(obj))


def mono_p_obj():
    p = MatrixPolynomial.scalar(Monomial(2), [2, -3, 1])
    return serialize.matrix_polynomial_obj(p)


class TestPencilCommand:
    def test_roundtrip(self, tmp_path):
        infile = tmp_path / "p.json"
        outfile = tmp_path / "L.json"
        write_json(infile, mono_p_obj())
        assert main(["pencil", "--in", str(infile), "--out", str(outfile)]) == 0
        pen = serialize.parse_pencil(json.loads(outfile.read_text()))
        assert pen.n == 1 and pen.block_count == 2
        assert pen.basis_tag == "monomial"

    def test_bernstein_grade5_structure(self, tmp_path):
        p = MatrixPolynomial.scalar(Bernstein(5), [1, 2, 3, 4, 5, 6])
        infile = tmp_path / "p.json"
        outfile = tmp_path / "L.json"
        write_json(infile, serialize.matrix_polynomial_obj(p))
        assert main(["pencil", "--in", str(infile), "--out", str(outfile)]) == 0
        pen = serialize.parse_pencil(json.loads(outfile.read_text()))
        diag = [pen.c1.get(i, i) for i in range(1, 5)]
        assert [str(d) for d in diag] == ["1/2", "1", "2", "5"]

    def test_malformed_input_exit2(self, tmp_path):
        infile = tmp_path / "bad.json"
        infile.write_text("{not json")
        assert main(["pencil", "--in", str(infile)]) == 2

    def test_missing_file_exit2(self, tmp_path):
        assert main(["pencil", "--in", str(tmp_path / "nope.json")]) == 2

    def test_duplicate_nodes_exit3(self, tmp_path):
        obj = {
            "n": 1,
            "basis": {"kind": "lagrange", "grade": 2, "nodes": ["0", "1", "1"]},
            "coeffs": [[["1"]], [["2"]], [["3"]]],
        }
        infile = tmp_path / "p.json"
        write_json(infile, obj)
        assert main(["pencil", "--in", str(infile)]) == 3

    def test_zero_alpha_exit3(self, tmp_path):
        obj = {
            "n": 1,
            "basis": {"kind": "recurrence", "grade": 2,
                      "alpha": ["1", "0"], "beta": ["0", "0"],
                      "gamma": ["0", "0"]},
            "coeffs": [[["1"]], [["2"]], [["3"]]],
        }
        infile = tmp_path / "p.json"
        write_json(infile, obj)
        assert main(["pencil", "--in", str(infile)]) == 3


class TestConvertCommand:
    def test_monomial_to_lagrange(self, tmp_path):
        infile = tmp_path / "p.json"
        outfile = tmp_path / "q.json"
        write_json(infile, mono_p_obj())
        basis = '{"kind": "lagrange", "grade": 2, "nodes": ["0", "1", "2"]}'
        assert main(["convert", "--in", str(infile), "--basis", basis,
                     "--out", str(outfile)]) == 0
        q = serialize.parse_matrix_polynomial(json.loads(outfile.read_text()))
        assert [c.get(0, 0) for c in q.coeffs] == [2, 0, 0]  # p at 0, 1, 2


class TestEquivCommand:
    def test_cofactors_monomial(self, tmp_path):
        infile = tmp_path / "p.json"
        outfile = tmp_path / "cert.json"
        write_json(infile, mono_p_obj())
        assert main(["equiv", "--in", str(infile), "--mode", "cofactors",
                     "--out", str(outfile)]) == 0
        cert = json.loads(outfile.read_text())
        assert cert["kind"] == "cofactors" and cert["verified"] is True
        e = serialize.parse_polymatrix(cert["E"])
        assert e.rows == 2

    def test_cofactors_bernstein_singular_at_one_exit3(self, tmp_path, capsys):
        p = MatrixPolynomial.scalar(Bernstein(3), [5, -1, 7, 0])
        infile = tmp_path / "p.json"
        write_json(infile, serialize.matrix_polynomial_obj(p))
        assert main(["equiv", "--in", str(infile), "--mode", "cofactors"]) == 3
        assert "SingularAtOne" in capsys.readouterr().err

    def test_strict_lagrange(self, tmp_path):
        p = MatrixPolynomial.scalar(Lagrange(2, (0, 1, 2)), [1, 3, 7])
        infile = tmp_path / "p.json"
        outfile = tmp_path / "cert.json"
        write_json(infile, serialize.matrix_polynomial_obj(p))
        assert main(["equiv", "--in", str(infile), "--mode", "strict",
                     "--out", str(outfile)]) == 0
        cert = json.loads(outfile.read_text())
        assert cert["kind"] == "strict" and cert["verified"] is True
        u = serialize.parse_const_matrix(cert["U"])
        assert u.rows == 4  # (grade + 2) blocks of size 1

    def test_strict_monomial_exit3(self, tmp_path):
        infile = tmp_path / "p.json"
        write_json(infile, mono_p_obj())
        assert main(["equiv", "--in", str(infile), "--mode", "strict"]) == 3

    def test_reversal_bernstein(self, tmp_path):
        p = MatrixPolynomial.scalar(Bernstein(4), [1, 2, -1, 3, 5])
        infile = tmp_path / "p.json"
        outfile = tmp_path / "cert.json"
        write_json(infile, serialize.matrix_polynomial_obj(p))
        assert main(["equiv", "--in", str(infile), "--mode", "reversal",
                     "--out", str(outfile)]) == 0
        cert = json.loads(outfile.read_text())
        assert cert["kind"] == "reversal"
        assert cert["unit"]["U"] in ("1", "-1")


class TestNfCommand:
    def test_mask_zero_matrix(self, tmp_path, capsys):
        obj = {"rows": 2, "cols": 2,
               "entries": [[["0"], ["0"]], [["0"], ["0"]]]}
        infile = tmp_path / "m.json"
        write_json(infile, obj)
        assert main(["nf", "--in", str(infile), "--kind", "mask"]) == 0
        assert capsys.readouterr().out == "00\n00\n"

    def test_hermite_output(self, tmp_path):
        obj = {"entries": [[["0"], ["1"]], [["1"], ["0"]]]}
        infile = tmp_path / "m.json"
        outfile = tmp_path / "h.json"
        write_json(infile, obj)
        assert main(["nf", "--in", str(infile), "--kind", "hermite",
                     "--out", str(outfile)]) == 0
        res = json.loads(outfile.read_text())
        h = serialize.parse_polymatrix(res["H"])
        assert [str(h.get(i, i)) for i in range(2)] == ["1", "1"]
        assert res["rankDeficient"] is False

    def test_hermite_mask_of_recurrence_pencil(self, tmp_path):
        from fractions import Fraction as F

        from polylin import Recurrence, build_recurrence_pencil, mask

        p = MatrixPolynomial.scalar(Recurrence.chebyshev(5),
                                    [F(2), F(3), F(5), F(7), F(11), F(13)])
        pen = build_recurrence_pencil(p)
        infile = tmp_path / "m.json"
        outfile = tmp_path / "h.json"
        write_json(infile, serialize.polymatrix_obj(pen.as_polymatrix()))
        assert main(["nf", "--in", str(infile), "--kind", "hermite",
                     "--out", str(outfile)]) == 0
        res = json.loads(outfile.read_text())
        h = serialize.parse_polymatrix(res["H"])
        assert mask(h) == ["x000x", "0x00x", "00x0x", "000xx", "0000x"]

    def test_smith_of_lagrange_pencil(self, tmp_path):
        p = MatrixPolynomial.scalar(Lagrange(2, (0, 1, 2)), [2, 3, 6])
        from polylin import build_lagrange_pencil

        pen = build_lagrange_pencil(p)
        infile = tmp_path / "m.json"
        outfile = tmp_path / "s.json"
        write_json(infile, serialize.polymatrix_obj(pen.as_polymatrix()))
        assert main(["nf", "--in", str(infile), "--kind", "smith",
                     "--out", str(outfile)]) == 0
        res = json.loads(outfile.read_text())
        factors = [serialize.parse_polyq(f) for f in res["invariantFactors"]]
        assert all(str(f) == "1" for f in factors[:-1])
        assert factors[-1].degree == 2  # the monic interpolant

    def test_malformed_exit2(self, tmp_path):
        infile = tmp_path / "m.json"
        write_json(infile, {"entries": "nope"})
        assert main(["nf", "--in", str(infile), "--kind", "smith"]) == 2


class TestSweepCommand:
    def test_small_sweep_deterministic(self, tmp_path):
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        args = ["sweep", "--count", "2", "--nmax", "2", "--lmax", "3",
                "--seed", "7"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        report = json.loads(out1.read_text())
        assert report["ok"] is True
        assert set(report["bases"]) == {"monomial", "recurrence", "bernstein",
                                        "lagrange"}

    def test_injected_fault_exit1(self, tmp_path):
        out = tmp_path / "r.json"
        code = main(["sweep", "--count", "1", "--nmax", "1", "--lmax", "2",
                     "--seed", "3", "--bases", "monomial", "--inject-fault",
                     "--out", str(out)])
        assert code == 1
        report = json.loads(out.read_text())
        assert report["ok"] is False
        assert report["counterexample"]["check"] == "companion"


class TestJsonRoundTrips:
    def test_fraction_strings(self):
        from fractions import Fraction

        assert serialize.frac_str(Fraction(-3, 4)) == "-3/4"
        assert serialize.frac_str(Fraction(5)) == "5"
        assert serialize.parse_frac("-3/4") == Fraction(-3, 4)
        with pytest.raises(Exception):
            serialize.parse_frac("0.5x")

    def test_matrix_polynomial_roundtrip(self):
        p = MatrixPolynomial.scalar(Lagrange(2, (0, 1, 2)), [1, 3, 7])
        obj = serialize.matrix_polynomial_obj(p)
        q = serialize.parse_matrix_polynomial(json.loads(json.dumps(obj)))
        assert q == p

    def test_pencil_roundtrip(self):
        from polylin import build_monomial_pencil

        p = MatrixPolynomial.scalar(Monomial(2), [2, -3, 1])
        pen = build_monomial_pencil(p)
        obj = serialize.pencil_obj(pen)
        back = serialize.parse_pencil(json.loads(json.dumps(obj)))
        assert back.c1 == pen.c1 and back.c0 == pen.c0
