"""Smoke test for the compiled `collatz` extension module."""

import collatz


def main():
    t = collatz.trajectory(11, 1000)
    assert t.values == [11, 34, 17, 52, 26, 13, 40, 20, 10, 5, 16, 8, 4, 2, 1]
    assert t.reached_one and t.steps == 14
    assert collatz.total_stopping_steps(27) == 111
    assert collatz.nu2(96) == (5, 3)

    e = collatz.encode(11)
    assert e.sequence.exponents == [0, 1, 3, 6, 10]
    assert collatz.decode(e.sequence) == 11
    assert collatz.RSequence.parse("0,1,3,6,10") == e.sequence
    assert collatz.decode(collatz.double_transform(e.sequence)) == 22

    big = 2**200 + 1
    assert collatz.decode(collatz.encode(big).sequence) == big
    assert collatz.collatz_step(big) == 3 * big + 1

    two = collatz.validate([1, 3])
    assert collatz.decode(two) == 2 and collatz.is_power_of_two(2)

    for bad in ([0, 3], [3, 1]):
        try:
            collatz.validate(bad)
        except collatz.CollatzError:
            pass
        else:
            raise AssertionError(f"{bad} accepted")
    try:
        collatz.collatz_step(0)
    except ValueError:
        pass
    else:
        raise AssertionError("0 accepted")

    c = collatz.coalesce(3, 11)
    assert c.met and c.meet_value == 10 and (c.index_left, c.index_right) == (1, 8)
    assert collatz.hypothesis_check(5).meet_value == 5

    report = collatz.hypothesis_sweep(3, 10_000, jobs=2)
    assert report.clean and report.checked == 10_000 - 2 - 12
    assert report.to_json() == collatz.hypothesis_sweep(3, 10_000, jobs=1).to_json()

    report, records = collatz.theorem1_sweep(2, 1000)
    assert report.clean and len(records) == 999 and all(r[1] for r in records)

    assert not collatz.lemma2_check(7) and collatz.lemma2_check(8)
    o = collatz.lemma4_check(8)
    assert o.target == 82 and o.k_found == 12 and o.prediction_holds()
    assert collatz.lemma3_check(12).prediction_holds()
    assert len(collatz.case3_inequality_audit(16)) == 16

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
