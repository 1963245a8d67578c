"""Smoke test for the `hurwitz` extension module.

Build first:  cargo build -p hurwitz-py --release --features extension-module
then run:     python3 python/smoke_test.py
The module is imported from sys.path if installed, otherwise from the
cargo target directory.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys


def load():
    try:
        import hurwitz  # noqa: F401

        return hurwitz
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent / "target"
    for profile in ("release", "debug"):
        lib = root / profile / "libhurwitz.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("hurwitz", str(lib))
            spec = importlib.util.spec_from_loader("hurwitz", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            sys.modules["hurwitz"] = module
            return module
    sys.exit("hurwitz extension not found; build it with cargo first")


def main():
    hz = load()

    a = hz.Permutation("(1, 22, 14)(2, 13, 9)(3, 8, 6)(7, 16, 21)(10, 18, 19)(11, 23, 12)", 23)
    b = hz.Permutation("(2, 4, 16)(3, 5, 7)(6, 11, 12)(8, 9, 14)(10, 21, 20)(15, 18, 17)", 23)
    m23 = hz.Group(23, [str(a), str(b)])
    assert m23.order() == 10200960
    assert m23.is_transitive()
    assert m23.are_conjugate(a, b)

    s = hz.Permutation("(1, 2)", 3)
    t = hz.Permutation("(1, 2, 3)", 3)
    assert (s * s.inverse()).order() == 1
    assert t.pow(3) == hz.Permutation("()", 3)

    s3 = hz.Group(3, ["(1, 2)", "(1, 2, 3)"])
    c = s3.classes("transpositions")
    assert len(c) == 3
    comps = hz.enumerate_components(c, 4)
    assert comps and all(x.degree == 4 for x in comps)
    generating = hz.enumerate_components(c, 4, generating=True)
    assert len(generating) == 1

    x = hz.Component(3, ["(1, 2)", "(1, 2)"])
    y = hz.Component(3, ["(1, 3)", "(1, 3)"])
    assert (x * y) == generating[0]
    assert hz.ni_set([x, y], sharp=True) == [x * y]
    assert not hz.are_permuting(x, y)

    cover = hz.SchurCover(c)
    assert cover.size() == 6 and cover.kernel_order() == 1
    s_part, projection, psi = cover.invariant(x * y)
    assert str(projection) == "()"
    assert sum(psi.values()) == 4
    assert cover.resolve_action(x * y, 5) == [x * y]

    yes = []
    for n in range(2, 13):
        zn = hz.Group(n, ["(" + ", ".join(str(i) for i in range(1, n + 1)) + ")"])
        g = zn.classes("nonidentity").representatives()[0]
        pair = hz.Component(n, [str(g), str(g.inverse())])
        if hz.is_defined_over_abelian(pair):
            yes.append(n)
    assert yes == [2, 3, 4, 6], yes

    z3 = hz.Group(3, ["(1, 2, 3)"])
    v = hz.build_v(z3.classes("nonidentity"))
    assert v.degree == 6
    assert hz.is_complete(z3.classes("nonidentity"))

    try:
        hz.Component(3, ["(1, 2)", "(1, 3)"])
    except ValueError:
        pass
    else:
        raise AssertionError("non product-one tuple accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
