from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
import pytest

from helpers import TOY
from weakprefix.cli import main


@pytest.fixture
def toy_index(tmp_path, capsys):
    src = tmp_path / "toy.txt"
    src.write_bytes(b"00100110101\r\n001001010\n\n0010011010010\n")
    out = tmp_path / "toy.wps"
    assert main(["build", str(src), "--out", str(out)]) == 0
    first = capsys.readouterr().out.splitlines()[0]
    assert first == "n=3 HT=6 T=17"
    return out


def run(capsys, argv):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_build_rejects_prefix_pair(tmp_path, capsys):
    src = tmp_path / "bad.txt"
    src.write_text("0\n01\n")
    code, _, err = run(capsys, ["build", str(src), "--out", str(tmp_path / "x")])
    assert code == 2 and "line 1" in err and "line 2" in err


def test_build_rejects_duplicate_and_junk(tmp_path, capsys):
    src = tmp_path / "dup.txt"
    src.write_text("01\n1\n01\n")
    code, _, err = run(capsys, ["build", str(src), "--out", str(tmp_path / "x")])
    assert code == 2 and "1" in err and "3" in err
    src.write_text("01\n12\n")
    assert run(capsys, ["build", str(src), "--out", str(tmp_path / "x")])[0] == 2


def test_build_empty_file(tmp_path, capsys):
    src = tmp_path / "empty.txt"
    src.write_text("")
    assert run(capsys, ["build", str(src), "--out", str(tmp_path / "x")])[0] == 2


def test_queries(toy_index, capsys):
    assert run(capsys, ["query", str(toy_index), "prefix", "0010011"])[1] == "1 3\n"
    assert run(capsys, ["query", str(toy_index), "count", "0010011"])[1] == "2 1\n"
    code, out, _ = run(capsys, ["query", str(toy_index), "range", "001001010", "00100110101"])
    lines = out.splitlines()
    assert code == 0 and lines[:3] == TOY
    assert int(lines[3].split("=")[1]) <= 5


def test_stats(toy_index, capsys):
    code, out, _ = run(capsys, ["stats", str(toy_index)])
    pairs = dict(line.split("=", 1) for line in out.splitlines())
    assert code == 0 and pairs["n"] == "3" and pairs["HT"] == "6" and pairs["T"] == "17"


def test_container_errors(toy_index, tmp_path, capsys):
    data = toy_index.read_bytes()
    bad = tmp_path / "bad.wps"
    bad.write_bytes(data[: len(data) // 2])
    assert run(capsys, ["query", str(bad), "prefix", "0"])[0] == 4
    bad.write_bytes(b"nope" + data[4:])
    assert run(capsys, ["query", str(bad), "prefix", "0"])[0] == 4
    assert run(capsys, ["query", str(toy_index), "prefix", "0", "--expect-variant", "time"])[0] == 4
    assert run(capsys, ["stats", str(tmp_path / "missing.wps")])[0] == 4


def test_deterministic_output(tmp_path, capsys):
    src = tmp_path / "s.txt"
    src.write_text("\n".join(TOY))
    outs = []
    for k in range(2):
        code, out, _ = run(capsys, ["build", str(src), "--out", str(tmp_path / f"{k}.wps"),
                                    "--variant", "time", "--seed", "beef"])
        outs.append(out)
    assert outs[0] == outs[1]
    assert (tmp_path / "0.wps").read_bytes() == (tmp_path / "1.wps").read_bytes()


def test_verify_small_corpus(capsys):
    code, out, _ = run(capsys, ["verify", "--count", "12", "--max-n", "32", "--max-len", "64"])
    assert code == 0 and "all checks passed" in out


def test_verify_single_string_file(tmp_path, capsys):
    src = tmp_path / "one.txt"
    src.write_text("0110\n")
    assert run(capsys, ["verify", "--input", str(src)])[0] == 0


def test_verify_injected_fault(capsys):
    code, out, _ = run(capsys, ["verify", "--count", "12", "--max-n", "32", "--max-len", "64",
                                "--inject-fault"])
    assert code == 1 and "counterexample" in out and "set seed" in out


def test_bench_small(capsys):
    code, out, _ = run(capsys, ["bench", "--min-exp", "4", "--max-exp", "5", "--length", "16"])
    rows = out.splitlines()
    assert code == 0 and rows[0].startswith("n\t") and len(rows) == 3


def byte_prefix_free(words):
    out = []
    for w in sorted(set(words)):
        if out and w.startswith(out[-1]):
            continue
        out.append(w)
    return out


words = st.lists(st.text(alphabet="abcé", min_size=1, max_size=6), min_size=1, max_size=12)


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(words)
def test_byte_mode_matches_character_scan(tmp_path_factory, capsys, ws):
    enc = byte_prefix_free(w.encode() for w in ws)
    d = tmp_path_factory.mktemp("bytes")
    (d / "w.txt").write_bytes(b"\n".join(enc))
    assert main(["build", str(d / "w.txt"), "--out", str(d / "w.wps"), "--alphabet", "byte"]) == 0
    capsys.readouterr()
    queries = sorted({w[:k] for w in enc for k in range(1, len(w) + 1)})
    for q in queries:
        text = q.decode("utf-8", errors="ignore")
        if text.encode() != q:
            continue
        want = [w for w in enc if w.startswith(q)]
        assert main(["query", str(d / "w.wps"), "search", text]) == 0
        got = capsys.readouterr().out.splitlines()
        assert got[:-1] == [w.decode() for w in want]
        assert main(["query", str(d / "w.wps"), "count", text]) == 0
        assert capsys.readouterr().out.split()[0] == str(len(want))
