"""Hypothesis strategies for small polynomials."""

from hypothesis import strategies as st

from diffpowers.poly import Polynomial, Ring


def polynomials(ring: Ring, max_degree: int = 3, max_terms: int = 4, coeff: int = 9):
    exps = st.tuples(*[st.integers(0, max_degree)] * ring.nvars).filter(lambda e: sum(e) <= max_degree)
    terms = st.dictionaries(exps, st.integers(-coeff, coeff), max_size=max_terms)
    return terms.map(lambda d: Polynomial(ring, {e: c for e, c in d.items() if c}))


def homogeneous(ring: Ring, degree: int, max_terms: int = 4, coeff: int = 9):
    def fix(d):
        out = {}
        for e, c in d.items():
            e = list(e)
            e[-1] += degree - sum(e)
            if e[-1] >= 0 and c:
                out[tuple(e)] = out.get(tuple(e), 0) + c
        return Polynomial(ring, {e: c for e, c in out.items() if c})

    exps = st.tuples(*[st.integers(0, degree)] * ring.nvars)
    return st.dictionaries(exps, st.integers(-coeff, coeff), max_size=max_terms).map(fix)
