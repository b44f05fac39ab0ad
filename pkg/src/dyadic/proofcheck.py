"""Independent replay of proof objects.

Two calculi are supported:

* ``HEPlus``: the search calculus.  Each node is re-derived with
  :func:`dyadic.rules.instantiate` and compared with its children.
* ``HEWithCut``: the non-invertible calculus with explicit structural rules
  and cut, used to replay hand-written derivations.  Components are
  multisets here and hypersequents are compared up to component order.

Rule names in ``HEWithCut`` proofs::

    NegL NegR ImplL ImplR            propositional (principal formula consumed)
    BoxL BoxR ObligL ObligR Bet      modal and deontic
    WL WR CL CR                      internal weakening / contraction
    ew ec s5'                        external structural rules
    cut

For ``cut`` the principal record points into the children: ``component`` is
the component of the first child holding the cut formula on the left,
``secondary`` the component of the second child holding it on the right.
For ``s5'`` the principal component is the one with empty succedent and
``secondary`` is the component it is merged into.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .formula import Bet, Box, Formula, Impl, Neg, Oblig, conj_all, disj_all, render
from .hypersequent import Hypersequent, Sequent, is_initial
from .rules import NotApplicable, RuleTag, instantiate
from .search import ProofNode

__all__ = ["Calculus", "CheckResult", "MalformedProof", "check", "interp"]


class Calculus(str, enum.Enum):
    HEPlus = "HEPlus"
    HEWithCut = "HEWithCut"


class MalformedProof(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    path: tuple[int, ...] | None = None
    rule: str | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "proof checks"
        where = "root" if not self.path else "root/" + "/".join(map(str, self.path))
        return f"check failed at {where} (rule {self.rule}): {self.reason}"


class _Reject(Exception):
    pass


def check(proof: ProofNode, calculus: Calculus | str = Calculus.HEPlus) -> CheckResult:
    """Replay ``proof`` node by node (pre-order) and report the first bad step."""
    calculus = Calculus(calculus)
    step = _check_heplus if calculus is Calculus.HEPlus else _check_hecut
    stack: list[tuple[ProofNode, tuple[int, ...]]] = [(proof, ())]
    while stack:
        node, path = stack.pop()
        if not isinstance(node, ProofNode) or not isinstance(node.conclusion, Hypersequent):
            raise MalformedProof(f"not a proof node at {path}")
        try:
            if node.rule is None:
                if node.children:
                    raise _Reject("node without a rule has children")
                if not is_initial(node.conclusion):
                    raise _Reject("leaf is not an initial hypersequent")
            else:
                if node.principal is None:
                    raise _Reject("missing principal record")
                step(node)
        except _Reject as exc:
            return CheckResult(False, path, None if node.rule is None else str(node.rule), str(exc))
        stack.extend((c, path + (k,)) for k, c in reversed(list(enumerate(node.children))))
    return CheckResult(True)


# ---------------------------------------------------------------- HE+

def _check_heplus(node: ProofNode) -> None:
    p = node.principal
    try:
        inst = instantiate(node.conclusion, RuleTag(node.rule), p.component, p.formula, p.secondary)
    except (NotApplicable, ValueError) as exc:
        raise _Reject(str(exc)) from None
    got = [c.conclusion for c in node.children]
    if len(got) != len(inst.premises):
        raise _Reject(f"expected {len(inst.premises)} premises, found {len(got)}")
    for k, (want, have) in enumerate(zip(inst.premises, got)):
        if want != have:
            raise _Reject(f"premise {k} is {have}, expected {want}")


# ---------------------------------------------------------------- HE with cut

def _ckey(c: Sequent):
    return (frozenset(Counter(c.ant).items()), frozenset(Counter(c.suc).items()))


def _hkey(comps) -> Counter:
    return Counter(_ckey(c) for c in comps)


def _without(fs: tuple[Formula, ...], f: Formula) -> tuple[Formula, ...]:
    k = fs.index(f)
    return fs[:k] + fs[k + 1:]


def _projection(c: Sequent) -> list[Formula]:
    return [f for f in c.ant if isinstance(f, (Box, Oblig))]


def _component(comps, index: int, what: str = "component") -> Sequent:
    if index is None or not 1 <= index <= len(comps):
        raise _Reject(f"no {what} {index}")
    return comps[index - 1]


def _expect_children(node: ProofNode, premises: list[list[Sequent]]) -> None:
    if len(node.children) != len(premises):
        raise _Reject(f"expected {len(premises)} premises, found {len(node.children)}")
    for k, (want, child) in enumerate(zip(premises, node.children)):
        if _hkey(want) != _hkey(child.conclusion.components):
            shown = " | ".join(str(c) for c in want)
            raise _Reject(f"premise {k} is {child.conclusion}, expected {shown}")


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise _Reject(msg)


def _check_hecut(node: ProofNode) -> None:
    rule = str(node.rule)
    p = node.principal
    f = p.formula
    comps = list(node.conclusion.components)

    if rule == "cut":
        _check_cut(node)
        return

    i = p.component
    c = _component(comps, i)

    def swap(new: Sequent) -> list[Sequent]:
        return comps[: i - 1] + [new] + comps[i:]

    if rule in ("NegL", "ImplL", "BoxL", "ObligL", "WL", "CL"):
        _need(f in c.ant, f"{render(f)} is not in the antecedent of component {i}")
    elif rule in ("NegR", "ImplR", "BoxR", "ObligR", "Bet", "WR", "CR"):
        _need(f in c.suc, f"{render(f)} is not in the succedent of component {i}")

    shapes = {"NegL": Neg, "NegR": Neg, "ImplL": Impl, "ImplR": Impl, "BoxL": Box, "BoxR": Box,
              "ObligL": Oblig, "ObligR": Oblig, "Bet": Bet}
    if rule in shapes:
        _need(isinstance(f, shapes[rule]), f"{rule} does not apply to {render(f)}")

    if rule == "NegL":
        premises = [swap(Sequent(_without(c.ant, f), c.suc + (f.child,)))]
    elif rule == "NegR":
        premises = [swap(Sequent(c.ant + (f.child,), _without(c.suc, f)))]
    elif rule == "ImplL":
        rest = _without(c.ant, f)
        premises = [swap(Sequent(rest, c.suc + (f.left,))), swap(Sequent(rest + (f.right,), c.suc))]
    elif rule == "ImplR":
        premises = [swap(Sequent(c.ant + (f.left,), _without(c.suc, f) + (f.right,)))]
    elif rule == "BoxL":
        premises = [swap(Sequent(c.ant + (f.child,), c.suc))]
    elif rule == "BoxR":
        premises = [swap(Sequent(tuple(_projection(c)), (f.child,)))]
    elif rule == "ObligR":
        a = f.antecedent
        premises = [swap(Sequent(tuple(_projection(c)) + (a, Bet(Neg(a))), (f.consequent,)))]
    elif rule == "ObligL":
        a = f.antecedent
        premises = [
            swap(Sequent(c.ant, c.suc + (a,))),
            swap(Sequent(c.ant, c.suc + (Bet(Neg(a)),))),
            swap(Sequent(c.ant + (f.consequent,), c.suc)),
        ]
    elif rule == "Bet":
        drop = tuple(g.child for g in c.ant if isinstance(g, Bet))
        premises = [swap(Sequent(tuple(_projection(c)) + drop, (f.child,)))]
    elif rule == "WL":
        premises = [swap(Sequent(_without(c.ant, f), c.suc))]
    elif rule == "WR":
        premises = [swap(Sequent(c.ant, _without(c.suc, f)))]
    elif rule == "CL":
        premises = [swap(Sequent(c.ant + (f,), c.suc))]
    elif rule == "CR":
        premises = [swap(Sequent(c.ant, c.suc + (f,)))]
    elif rule == "ew":
        _need(len(comps) > 1, "cannot weaken away the only component")
        premises = [comps[: i - 1] + comps[i:]]
    elif rule == "ec":
        premises = [comps + [c]]
    elif rule == "s5'":
        _need(not c.suc, f"component {i} must have an empty succedent")
        j = p.secondary
        target = _component(comps, j, "secondary component")
        _need(j != i, "s5' needs two distinct components")
        merged = Sequent(tuple(_projection(c)) + target.ant, target.suc)
        premises = [[merged if k == j else d for k, d in enumerate(comps, 1) if k != i]]
    else:
        raise _Reject(f"unknown rule {rule!r}")
    _expect_children(node, premises)


def _check_cut(node: ProofNode) -> None:
    p = node.principal
    a = p.formula
    _need(len(node.children) == 2, f"cut needs 2 premises, found {len(node.children)}")
    left = list(node.children[0].conclusion.components)
    right = list(node.children[1].conclusion.components)
    lc = _component(left, p.component, "left cut component")
    rc = _component(right, p.secondary, "right cut component")
    _need(a in lc.ant, f"cut formula {render(a)} not in the antecedent of the first premise")
    _need(a in rc.suc, f"cut formula {render(a)} not in the succedent of the second premise")
    merged = Sequent(_without(lc.ant, a) + rc.ant, lc.suc + _without(rc.suc, a))
    rest = [d for k, d in enumerate(left, 1) if k != p.component]
    rest += [d for k, d in enumerate(right, 1) if k != p.secondary]
    want = _hkey(rest + [merged])
    if want != _hkey(node.conclusion.components):
        raise _Reject("conclusion does not match the cut of its premises")


# ---------------------------------------------------------------- interpretation

def interp(h: Hypersequent) -> Formula:
    """The formula a hypersequent stands for: a disjunction of boxed implications."""
    return disj_all(Box(Impl(conj_all(c.ant), disj_all(c.suc))) for c in h.components)
