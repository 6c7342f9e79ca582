"""Smoke test for the twl_py extension; build it first with `maturin develop -m crates/twl-py/Cargo.toml`."""

import twl_py

F5_TOML = 'kind = "finite_field"\np = 5\nk = 1\ntau_exponent = 0\n'


def main():
    assert "5" in twl_py.describe_ring(F5_TOML)

    ok, text = twl_py.k2_witness("f5", "c(t,2)")
    assert ok and "witness = true" in text and "tame = 3" in text, text

    ok, text = twl_py.factor(F5_TOML, 2, "x[2,1](1)")
    assert ok and text.endswith("verified = true\n"), text

    ok, text = twl_py.evaluate("f4", 2, "x[1,2](g*t^1)")
    assert ok and "g*t^1" in text, text

    ok, report = twl_py.audit("R", "f4", n=3, samples=50, seed=7)
    assert ok and "result: PASS" in report, report
    again = twl_py.audit("R", "f4", n=3, samples=50, seed=7)[1]
    assert report == again

    ok, report = twl_py.extension_check("central", "f9", n=2, samples=20, seed=1)
    assert ok, report

    try:
        twl_py.factor("f5", 2, "x[1,2](")
    except ValueError as e:
        assert "parse error" in str(e)
    else:
        raise AssertionError("malformed word was accepted")

    print("twl_py smoke test: ok")


if __name__ == "__main__":
    main()
