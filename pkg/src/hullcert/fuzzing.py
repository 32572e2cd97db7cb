"""Seeded randomized round-trip checking of construction families.

Each sample draws a point from the family's relaxation (an LP vertex under
a random exact objective, or a random convex mixture of feasible
generators), then runs construct -> verify -> extract -> reconstruct and
requires exact reconstruction.  Optionally the membership oracle
cross-checks every constructed point.  Failures carry the instance, the
point, and the per-sample seed for reproduction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .certificate import extract, reconstruct, verify
from .errors import HullcertError
from .families import MIXTURE, VERTEX, get_family
from .lp import membership
from .rational import fmt_rat, rat


@dataclass
class FuzzFailure:
    sample: int
    seed: int
    instance: dict
    point: tuple
    stage: str
    detail: str


@dataclass
class FuzzReport:
    family: str
    mode: str
    samples: int = 0
    vertex_samples: int = 0
    mixture_samples: int = 0
    oracle_checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def lines(self):
        tag = self.family + (f" [{self.mode}]" if self.mode else "")
        yield (
            f"{tag}: {self.samples - len(self.failures)}/{self.samples} pass "
            f"({self.vertex_samples} vertices, {self.mixture_samples} mixtures,"
            f" {self.oracle_checks} oracle checks)"
        )
        for f in self.failures[:5]:
            yield (
                f"  FAIL sample {f.sample} (seed {f.seed}, stage {f.stage}): "
                f"{f.detail}"
            )
            yield f"    point {[fmt_rat(v) for v in f.point]}"


def _child_seed(seed, i):
    return seed * 1_000_003 + i


def fuzz_family(
    name,
    samples=100,
    seed=0,
    mode=None,
    instance_data=None,
    instances=8,
    vertex_every=5,
    oracle_every=0,
) -> FuzzReport:
    """Run the construct/verify/extract/reconstruct round trip.

    instance_data pins one instance; otherwise a fresh one is sampled every
    ceil(samples/instances) draws.  Every vertex_every-th point is an LP
    vertex, the rest are mixtures.  oracle_every > 0 additionally
    cross-checks membership via the enumerated generators where available.
    """
    fam = get_family(name)
    report = FuzzReport(family=name, mode=mode or "")
    per_instance = max(1, samples // instances)
    inst = None
    inst_dict = None
    gens = None
    tol = fam.verify_tol(mode)
    for i in range(samples):
        sub = random.Random(_child_seed(seed, i))
        if instance_data is not None:
            if inst is None:
                inst_dict = dict(instance_data)
                inst = fam.parse(inst_dict)
                gens = fam.generators(inst, mode) if oracle_every else None
        elif inst is None or i % per_instance == 0:
            inst_dict = fam.sample_instance(sub, mode)
            inst = fam.parse(inst_dict)
            gens = fam.generators(inst, mode) if oracle_every else None
        kind = VERTEX if i % vertex_every == 0 else MIXTURE
        point = fam.sample_point(inst, sub, kind, mode)
        if kind == VERTEX:
            report.vertex_samples += 1
        else:
            report.mixture_samples += 1
        report.samples += 1

        def fail(stage, detail):
            report.failures.append(
                FuzzFailure(i, _child_seed(seed, i), inst_dict, point, stage, detail)
            )

        try:
            cert = fam.construct(inst, point, mode=mode, rng=sub)
        except HullcertError as exc:
            fail("construct", str(exc))
            continue
        rep = verify(cert, tol=tol)
        if not rep.ok:
            fail("verify", "; ".join(rep.lines()))
            continue
        try:
            comb = extract(cert, tol=tol, report=rep)
        except HullcertError as exc:
            fail("extract", str(exc))
            continue
        if reconstruct(comb) != tuple(rat(v) for v in point):
            fail("reconstruct", "reconstruction differs from the input point")
            continue
        if oracle_every and gens and i % oracle_every == 0:
            res = membership(gens[0], gens[1], point)
            report.oracle_checks += 1
            if not res.inside:
                fail("oracle", "membership oracle disagrees with the certificate")
    return report
