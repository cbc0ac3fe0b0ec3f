"""FastAPI service exposing the shuffle-algebra toolkit.

Elements travel as their canonical JSON (``{"n", "deg", "numerator"}``) or as
generator-spec strings like ``"F(2;mu1)"``; every response carries exact data
only.  The CLI is a thin client of these endpoints.
"""

from __future__ import annotations

from typing import Optional, Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .polyring import (
    DenominatorNotBinomial,
    DenominatorVanishes,
    DivisionByZero,
    NotDivisible,
    TermLimitExceeded,
    set_term_limit,
)
from .shuffle import (
    AlgebraConfig,
    Inhomogeneous,
    NotSymmetric,
    PoleViolation,
    ShuffleElement,
    serre_cubic,
    serre_quartic,
    star,
    tot_deg,
    wheel_check,
)
from .limits import (
    interval_degree_vector,
    limit_infinity,
    limit_zero,
    membership_A,
    slope_zero_membership,
)
from .gordon import PartitionL, Q_L, enumerate_partitions, phi_L, phi_lambda
from .subalg import (
    SpanProbe,
    build_element,
    commutator,
    commutes,
    dim_R,
    mu_params,
    product_basis,
    rank_of_span,
)
from .suites import DEFAULT_SEED, SUITES, run_suite

app = FastAPI(title="shuffleforge", version=__version__)

ElementLike = Union[str, dict]


def _resolve(n: int, payload: ElementLike) -> ShuffleElement:
    config = AlgebraConfig(n)
    if isinstance(payload, str):
        try:
            return build_element(config, payload)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
    try:
        elem = ShuffleElement.from_json(payload)
    except (KeyError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=f"bad element payload: {exc}")
    if elem.config.n != n:
        raise HTTPException(status_code=422, detail="element color count differs from n")
    return elem


def _element_info(elem: ShuffleElement) -> dict:
    try:
        td = tot_deg(elem)
    except Inhomogeneous:
        td = None
    return {
        "element": elem.to_json(),
        "terms": len(elem.numerator),
        "tot_deg": td,
    }


def _wrap(fn):
    try:
        return fn()
    except (PoleViolation, NotSymmetric, NotDivisible, DenominatorVanishes,
            DenominatorNotBinomial, DivisionByZero, Inhomogeneous, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except TermLimitExceeded as exc:
        raise HTTPException(status_code=413, detail=str(exc))


class GenRequest(BaseModel):
    n: int = 3
    spec: str = Field(examples=["F(1;mu1)", "e(0,2)", "Gamma0(1,1)"])


class StarRequest(BaseModel):
    n: int = 3
    a: ElementLike
    b: ElementLike


class CommuteRequest(BaseModel):
    n: int = 3
    a: ElementLike
    b: ElementLike
    materialize: bool = False


class WheelRequest(BaseModel):
    n: int = 3
    element: ElementLike


class MembershipRequest(BaseModel):
    n: int = 3
    element: ElementLike
    mode: str = Field("exact", pattern="^(exact|fastpath)$")
    seed: int = DEFAULT_SEED


class LimitsRequest(BaseModel):
    n: int = 3
    element: ElementLike
    op: str = Field("inf", pattern="^(inf|zero)$")
    interval: Optional[tuple[int, int]] = None
    lvec: Optional[list[int]] = None


class PhiLRequest(BaseModel):
    n: int = 3
    element: ElementLike
    intervals: str = Field(examples=["0-1;2-2"])


class PhiLambdaRequest(BaseModel):
    n: int = 3
    element: ElementLike
    shape: list[int]


class QLRequest(BaseModel):
    n: int = 3
    intervals: str


class RankRequest(BaseModel):
    n: int = 3
    k: int = 1
    seed: int = DEFAULT_SEED


class SerreRequest(BaseModel):
    n: int = 3
    i: int = 1
    j: Optional[int] = None
    modes: list[int] = [0, 0, 0]


class VerifyRequest(BaseModel):
    suite: str = "desk"
    seed: int = DEFAULT_SEED
    long: bool = False
    term_limit: Optional[int] = None


@app.get("/healthz")
def healthz():
    return {"ok": True, "version": __version__}


@app.post("/element/generate")
def generate(req: GenRequest):
    return _wrap(lambda: _element_info(_resolve(req.n, req.spec)))


@app.post("/element/star")
def element_star(req: StarRequest):
    def go():
        a = _resolve(req.n, req.a)
        b = _resolve(req.n, req.b)
        return _element_info(star(a, b))

    return _wrap(go)


@app.post("/element/commute")
def element_commute(req: CommuteRequest):
    def go():
        a = _resolve(req.n, req.a)
        b = _resolve(req.n, req.b)
        if req.materialize:
            com = commutator(a, b)
            return {"zero": com.is_zero(), **_element_info(com)}
        return {"zero": commutes(a, b)}

    return _wrap(go)


@app.post("/element/wheel")
def element_wheel(req: WheelRequest):
    def go():
        elem = _resolve(req.n, req.element)
        return {
            "ok": wheel_check(elem),
            "convention_dependent": elem.config.n == 2,
        }

    return _wrap(go)


@app.post("/element/membership")
def element_membership(req: MembershipRequest):
    def go():
        import random

        rng = random.Random(req.seed) if req.mode == "fastpath" else None
        rep = membership_A(_resolve(req.n, req.element), rng=rng)
        return {
            "ok": rep.ok,
            "violations": rep.violations,
            "intervals_checked": rep.intervals_checked,
        }

    return _wrap(go)


@app.post("/element/slope-zero")
def element_slope_zero(req: MembershipRequest):
    def go():
        ok, witness = slope_zero_membership(_resolve(req.n, req.element))
        return {"ok": ok, "witness": list(witness) if isinstance(witness, tuple) else witness}

    return _wrap(go)


@app.post("/element/limits")
def element_limits(req: LimitsRequest):
    def go():
        elem = _resolve(req.n, req.element)
        if req.interval is not None:
            a, b = req.interval
            lvec = interval_degree_vector(req.n, a, b)
        elif req.lvec is not None:
            lvec = tuple(req.lvec)
        else:
            raise ValueError("provide interval=[a,b] or lvec")
        res = limit_infinity(elem, lvec) if req.op == "inf" else limit_zero(elem, lvec)
        out = {"exists": res.exists, "lvec": list(lvec)}
        if res.exists:
            out["value"] = res.value.to_json()
            out["zero"] = res.value.is_zero()
        return out

    return _wrap(go)


@app.post("/gordon/phi-l")
def gordon_phi_l(req: PhiLRequest):
    def go():
        elem = _resolve(req.n, req.element)
        L = PartitionL.parse(req.intervals)
        return {"poly": phi_L(elem, L).to_json()}

    return _wrap(go)


@app.post("/gordon/phi-lambda")
def gordon_phi_lambda(req: PhiLambdaRequest):
    def go():
        elem = _resolve(req.n, req.element)
        return {"ratfunc": phi_lambda(elem, tuple(req.shape)).to_json()}

    return _wrap(go)


@app.post("/gordon/ql")
def gordon_ql(req: QLRequest):
    def go():
        L = PartitionL.parse(req.intervals)
        return {"poly": Q_L(req.n, L).to_json()}

    return _wrap(go)


@app.get("/gordon/partitions")
def gordon_partitions(n: int, deg: str):
    def go():
        kbar = tuple(int(x) for x in deg.split(","))
        return {"classes": [L.describe() for L in enumerate_partitions(n, kbar)]}

    return _wrap(go)


@app.get("/dims")
def dims(n: int, k: int):
    return _wrap(lambda: {"n": n, "k": k, "dim": dim_R(n, k)})


@app.post("/rank")
def rank(req: RankRequest):
    def go():
        config = AlgebraConfig(req.n)
        basis = product_basis(config, req.k, mu_params(req.n))
        got = rank_of_span(SpanProbe(basis, seed=req.seed))
        want = dim_R(req.n, req.k)
        return {"rank": got, "dim_R": want, "basis": len(basis), "ok": got == want}

    return _wrap(go)


@app.post("/serre")
def serre(req: SerreRequest):
    def go():
        config = AlgebraConfig(req.n)
        if req.n == 2:
            z = serre_quartic(config, req.i, tuple(req.modes))
        else:
            j = req.j if req.j is not None else (req.i + 1) % req.n
            z = serre_cubic(config, req.i, j, tuple(req.modes))
        return {"zero": z.is_zero(), "terms": len(z.numerator)}

    return _wrap(go)


@app.post("/verify")
def verify(req: VerifyRequest):
    def go():
        if req.term_limit:
            set_term_limit(req.term_limit)
        report, timings = run_suite(req.suite, seed=req.seed, long=req.long)
        return {"report": report, "timings": {k: round(v, 3) for k, v in timings.items()}}

    return _wrap(go)
