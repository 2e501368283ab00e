import json

import pytest

from khinv import cli
from khinv.homology import GradedModule

TREFOIL_KH_LATEX = r"""\begin{tabular}{r|lllll}
$8$ & $.$ & $.$ & $.$ & $\mathbb{F}$ & $\mathbb{F}$ \\
$6$ & $.$ & $.$ & $\mathbb{F}$ & $\mathbb{F}$ & $.$ \\
$4$ & $.$ & $.$ & $.$ & $.$ & $.$ \\
$2$ & $\mathbb{F}$ & $\mathbb{F}$ & $.$ & $.$ & $.$ \\
\hline
$ $ & $0$ & $1$ & $2$ & $3$ & $4$ \\
\end{tabular}"""


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "--input", "data/3_1.sik")
    assert code == 0
    assert out.startswith("ok: 3 crossings, mode strong")


def test_validate_reports_problems(tmp_path, capsys):
    p = tmp_path / "bad.sik"
    p.write_text("mode strong\nx c1 + u:a,b o:b,a\ntau a b\n")
    code, _, err = run(capsys, "validate", "--input", str(p))
    assert code == 1
    assert "invalid input" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "--input", "no/such/file.sik")
    assert code == 1


def test_involutive_khovanov_latex(capsys):
    code, out, _ = run(capsys, "homology", "--input", "data/3_1.sik", "--theory", "kh", "--involutive",
                       "--variant", "reduced", "--format", "latex")
    assert code == 0
    assert out.strip() == TREFOIL_KH_LATEX


def test_text_table(capsys):
    code, out, _ = run(capsys, "homology", "--input", "data/3_1.sik", "--theory", "bn", "--involutive",
                       "--variant", "reduced")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["8", "|", ".", ".", ".", "𝔽", "𝔽"]
    assert "𝔽[H]  𝔽[H]" in lines[3]
    assert lines[-1].split()[0] == "q\\i"


def test_json_roundtrip(capsys):
    code, out, _ = run(capsys, "homology", "--input", "data/7_4b.sik", "--theory", "bn", "--involutive",
                       "--variant", "reduced", "--format", "json")
    data = json.loads(out)
    assert data["schema"] == cli.SCHEMA
    M = cli.module_from_json(data)
    assert any(k == 2 for _, _, k in M.torsion)
    with pytest.raises(ValueError):
        cli.module_from_json({**data, "schema": 99})


def test_torsion_rendering():
    M = GradedModule([(0, 0)], [(1, 4, 2), (1, 4, 2), (1, 4, 1)])
    text = cli.render_table(M)
    assert "𝔽 ⊕ (𝔽[H]/(H²))²" in text
    latex = cli.render_table(M, "latex")
    assert r"\mathbb{F} \oplus (\mathbb{F}[H]/(H^2))^{2}" in latex


def test_shared_bounds_widen_the_grid():
    A = GradedModule([(0, 2)], [])
    B = GradedModule([(0, 2)], [(3, 8, 1)])
    text = cli.render_table(A, bounds=cli.shared_bounds(A, B))
    assert text.splitlines()[-1].split() == ["q\\i", "|", "0", "1", "2", "3"]


def test_s_command(capsys):
    code, out, _ = run(capsys, "s", "--input", "data/m9_46.sik")
    assert code == 0
    fields = dict(kv.split("=") for kv in out.split())
    assert (fields["s_lower"], fields["s_upper"]) == ("0", "2")


def test_s_json(capsys):
    code, out, _ = run(capsys, "s", "--input", "data/3_1.sik", "--format", "json")
    assert json.loads(out)["invariants"]["s_upper"] == 2


def test_resource_cap_exit_code(capsys):
    code, _, err = run(capsys, "s", "--input", "data/m9_46.sik", "--cap", "5")
    assert code == 3
    assert "resource limit" in err


def test_pair_command(capsys):
    code, out, _ = run(capsys, "pair", "--input", "data/3_1.sik")
    assert code == 0
    assert out.strip() == "r=2 unreduced=H^2 reduced=H"


def test_sigma_tau_needs_unreduced(capsys):
    code, _, _ = run(capsys, "homology", "--input", "data/3_1_periodic.sik", "--involutive",
                     "--mode", "sigma-tau", "--variant", "reduced")
    assert code == 1


def test_periodic_lee_dimension(capsys):
    code, out, _ = run(capsys, "homology", "--input", "data/3_1_periodic.sik", "--theory", "bn1",
                       "--involutive", "--mode", "sigma-tau")
    assert code == 0
    assert out.splitlines()[0].split() == ["*", "|", "𝔽[H]²", "𝔽[H]²"]
