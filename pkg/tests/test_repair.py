import itertools
import math
import random

import pytest

from repsens import (
    Edit,
    InputError,
    SymbolString,
    apply_edit,
    attractor_repair,
    bms_repair,
    enumerate_edits,
    is_attractor,
    lz_end_greedy,
    lzend_repair,
    lzss_nonoverlapping,
    smallest_attractor,
    verify_factorization,
)
from repsens.measures import as_bms, bms_is_valid
from repsens.repair import RepairReport, _ceil_sqrt


def t(s):
    return SymbolString.from_text(s)


def real_edits(T, sigma):
    for e in enumerate_edits(T, sigma):
        if e.kind == "sub" and T.at(e.position) == e.symbol:
            continue
        yield e


def edited_phrase_index(F, e):
    for k, ph in enumerate(F.phrases, 1):
        if e.kind == "ins":
            if ph.start <= e.position and ph.end >= e.position + 1:
                return k
        elif ph.start <= e.position <= ph.end:
            return k
    return None


# ---------------------------------------------------------------- attractor


def test_attractor_repair_running_example():
    T = t("baaaabbaaa")
    e = Edit("sub", 5, SymbolString.from_text("c").symbols[0])
    out, report = attractor_repair(T, {5, 7}, e)
    Tp = apply_edit(T, e)
    assert is_attractor(Tp, out)
    assert len(out) <= 2 + math.isqrt(10) + _ceil_sqrt(10) + 2
    assert report.bound == 2 + math.isqrt(10) + _ceil_sqrt(10) + 2


def test_attractor_repair_rejects_same_symbol_substitution():
    T = t("ab")
    with pytest.raises(InputError):
        attractor_repair(T, {1, 2}, Edit("sub", 1, T.at(1)))


def test_attractor_repair_rejects_non_attractor():
    with pytest.raises(InputError):
        attractor_repair(t("ab"), {1}, Edit("sub", 1, 99))


def test_attractor_repair_exhaustive_small():
    for n in range(1, 10):
        for bits in itertools.product((0, 1), repeat=n - 1):
            T = SymbolString((0,) + bits)
            gamma = smallest_attractor(T)
            for e in real_edits(T, {0, 1, 2}):
                out, report = attractor_repair(T, gamma, e)
                Tp = apply_edit(T, e)
                m = len(Tp)
                assert is_attractor(Tp, out)
                assert len(out) - len(gamma) <= math.isqrt(m) + _ceil_sqrt(m) + 2


def test_attractor_repair_delete_to_empty():
    out, report = attractor_repair(SymbolString([7]), {1}, Edit("del", 1))
    assert out == frozenset()


def test_attractor_repair_random_larger():
    # heuristic attractor: all positions (always valid); growth bound must hold
    rng = random.Random(43)
    for _ in range(25):
        n = rng.randint(2, 200)
        T = SymbolString(rng.randrange(3) for _ in range(n))
        gamma = frozenset(range(1, n + 1))
        kind = rng.choice(("sub", "ins", "del"))
        if kind == "sub":
            pos = rng.randint(1, n)
            e = Edit("sub", pos, rng.choice([s for s in range(4) if s != T.at(pos)]))
        elif kind == "ins":
            e = Edit("ins", rng.randint(0, n), rng.randrange(4))
        else:
            e = Edit("del", rng.randint(1, n))
        out, report = attractor_repair(T, gamma, e)
        Tp = apply_edit(T, e)
        m = len(Tp)
        assert is_attractor(Tp, out)
        assert len(out) - len(gamma) <= math.isqrt(m) + _ceil_sqrt(m) + 2


# ---------------------------------------------------------------- macro scheme


def test_bms_repair_all_ground_scheme():
    T = t("abc")
    grounds = as_bms(lzss_nonoverlapping(t("abc")))  # all fresh: all ground
    assert all(p.kind == "literal" for p in grounds.phrases)
    for e, want in ((Edit("sub", 2, 99), 3), (Edit("ins", 1, 99), 4), (Edit("del", 2), 2)):
        got, report = bms_repair(T, grounds, e)
        assert got.size == want
        assert all(p.kind == "literal" for p in got.phrases)


def test_bms_repair_case3_hand_trace():
    from repsens import Factorization, Phrase

    T = t("abab")
    S = Factorization(
        (Phrase(1, 1, "literal"), Phrase(2, 1, "literal"), Phrase(3, 2, "copy", 1)), "bms"
    )
    e = Edit("sub", 1, SymbolString.from_text("c").symbols[0])
    got, report = bms_repair(T, S, e)
    assert bms_is_valid(apply_edit(T, e), got)
    assert report.case_tally.get("bms:3", 0) >= 1
    assert dict((idx, label) for idx, label, _ in report.ledger)[3] == "bms:3"


def test_bms_repair_rejects_invalid_scheme():
    from repsens import Factorization, Phrase

    T = t("abab")
    bad = Factorization((Phrase(1, 2, "copy", 3), Phrase(3, 2, "copy", 1)), "bms")
    with pytest.raises(InputError):
        bms_repair(T, bad, Edit("sub", 1, 99))


def test_bms_repair_exhaustive_small():
    for n in range(1, 10):
        for bits in itertools.product((0, 1), repeat=n - 1):
            T = SymbolString((0,) + bits)
            S = as_bms(lzss_nonoverlapping(T))
            for e in real_edits(T, {0, 1, 2}):
                got, report = bms_repair(T, S, e)
                assert bms_is_valid(apply_edit(T, e), got)
                assert got.size <= 3 * S.size
                for _, label, count in report.ledger:
                    if label == "bms:1":
                        assert count <= 5
                    elif label == "bms:3":
                        assert count <= 3


def test_bms_repair_case_budgets_random():
    rng = random.Random(47)
    for _ in range(400):
        n = rng.randint(1, 40)
        sigma = rng.choice((2, 3, 4))
        T = SymbolString(rng.randrange(sigma) for _ in range(n))
        S = as_bms(lzss_nonoverlapping(T))
        pos = rng.randint(1, n)
        e = Edit("sub", pos, rng.choice([s for s in range(sigma + 1) if s != T.at(pos)]))
        got, report = bms_repair(T, S, e)
        assert bms_is_valid(apply_edit(T, e), got)
        assert got.size <= 3 * S.size
        assert got.size <= report.bound


def test_bms_repair_additive_growth_stays_rootlike():
    # growth across random inputs stays within a small multiple of sqrt(n):
    # long damaged phrases are few and short non-nested damaged sources
    # through one position are few
    rng = random.Random(53)
    worst = 0.0
    for _ in range(500):
        n = rng.randint(4, 40)
        T = SymbolString(rng.randrange(2) for _ in range(n))
        S = as_bms(lzss_nonoverlapping(T))
        pos = rng.randint(1, n)
        e = Edit("sub", pos, 2)
        got, report = bms_repair(T, S, e)
        growth = (got.size - S.size) / math.sqrt(n)
        worst = max(worst, growth)
    assert worst <= 6.0, worst


# ---------------------------------------------------------------- lzend


def test_lzend_repair_single_phrase_text():
    T = SymbolString([0])
    F = lz_end_greedy(T)
    with pytest.raises(InputError):
        lzend_repair(T, F, Edit("sub", 1, 0))
    got, report = lzend_repair(T, F, Edit("sub", 1, 5))
    assert got.size == 1 and got.phrases[0].kind == "literal"
    assert verify_factorization(SymbolString([5]), got)


def test_lzend_repair_rejects_wrong_flavor():
    T = t("abab")
    with pytest.raises(InputError):
        lzend_repair(T, lzss_nonoverlapping(T), Edit("sub", 1, 99))


def test_lzend_repair_exhaustive_small():
    for n in range(1, 10):
        for bits in itertools.product((0, 1), repeat=n - 1):
            T = SymbolString((0,) + bits)
            F = lz_end_greedy(T)
            for e in real_edits(T, {0, 1, 2}):
                got, report = lzend_repair(T, F, e)
                Tp = apply_edit(T, e)
                assert verify_factorization(Tp, got)
                cap = (2 if e.kind == "ins" else 3) * F.size
                assert got.size <= cap
                I = edited_phrase_index(F, e)
                if I is not None:
                    assert report.case_tally["lzend:2"] <= I + 1


def test_lzend_repair_random_bounds():
    rng = random.Random(59)
    for _ in range(600):
        n = rng.randint(1, 40)
        sigma = rng.choice((2, 3))
        T = SymbolString(rng.randrange(sigma) for _ in range(n))
        F = lz_end_greedy(T)
        for kind in ("sub", "ins", "del"):
            if kind == "sub":
                pos = rng.randint(1, n)
                e = Edit("sub", pos, rng.choice([s for s in range(sigma + 1) if s != T.at(pos)]))
            elif kind == "ins":
                e = Edit("ins", rng.randint(0, n), rng.randrange(sigma + 1))
            else:
                e = Edit("del", rng.randint(1, n))
            got, report = lzend_repair(T, F, e)
            Tp = apply_edit(T, e)
            assert verify_factorization(Tp, got)
            assert got.size <= (2 if kind == "ins" else 3) * F.size
            I = edited_phrase_index(F, e)
            if I is not None:
                assert report.case_tally["lzend:2"] <= I + 1


def test_repair_report_csv_row():
    T = t("abab")
    F = lz_end_greedy(T)
    e = Edit("sub", 2, 99)
    got, report = lzend_repair(T, F, e)
    row = report.csv_row()
    assert row.startswith("lzend,sub,2,99,4,")
    assert len(row.split(",")) == len(RepairReport.CSV_HEADER.split(","))
