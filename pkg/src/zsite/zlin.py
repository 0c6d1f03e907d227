"""Integer-linearized objects and morphisms over a finite base category.

An object is a formal sum of base objects with nonzero integer coefficients,
indexed by distinct component indices.  A morphism is a coefficient table:
terms ``(row, col, coefficient, arrow)`` where ``arrow`` is a base morphism
from the row's base object to the column's.  Row marginals must reproduce the
source coefficients and column marginals the target coefficients, so
morphisms only exist between objects of equal total mass and composition is
a mass transport through each shared middle component.

Composition and term order
--------------------------
Per middle component, both coefficient splittings are laid out as
consecutive intervals along ``[0, |n|)`` and each emitted term is an
interval overlap (the transportation-problem northwest rule).  Freshly
constructed morphisms are laid out in canonical ``(row, col, arrow)`` order.
Composite terms however carry *provenance ranks*: the target-side layout of
a composite orders its terms outer-major (each outer term's interval,
subdivided by inner terms), the source-side layout inner-major.  Re-sorting
composite terms by id would break associativity: two parallel arrows whose
composites with a third arrow sort in the opposite order make the two
bracketings pair different masses.  With provenance ranks every layout
coincides with the positions the masses already occupy, so both bracketings
of a triple perform literally the same atom-by-atom pairing and composition
is associative by construction on sign-coherent inputs.

Equality, validation, and serialization use the normalized view (merge by
``(row, col, arrow)``, drop zeros, sort); provenance only affects how a
composite behaves inside further compositions.

When either side of a middle has a single term, the coupling table is the
unique one with the required marginals, so it is used even without sign
coherence; identities have one term per component, which makes them exact
two-sided units for every morphism, mixed signs included.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import reports
from .fincat import FinCat, InputError
from .reports import Report


class SignIncoherent(InputError):
    """A middle component mixes signs and no explicit table was supplied."""


class MarginalMismatch(InputError):
    """Partition or table sums do not reproduce the required marginals."""


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


# =====================================================================
# objects and morphisms
# =====================================================================


@dataclass(frozen=True)
class ZObject:
    """Formal sum: tuple of (component index, base object id, coefficient)."""

    components: tuple[tuple[int, str, int], ...]

    def __post_init__(self):
        seen = set()
        for idx, obj, coeff in self.components:
            if coeff == 0:
                raise InputError(f"component {idx} of [{obj}] has zero coefficient")
            if idx in seen:
                raise InputError(f"duplicate component index {idx}")
            seen.add(idx)

    def indices(self) -> tuple[int, ...]:
        return tuple(idx for idx, _, _ in self.components)

    def base_object(self, idx: int) -> str:
        for i, obj, _ in self.components:
            if i == idx:
                return obj
        raise InputError(f"no component with index {idx}")

    def coefficient(self, idx: int) -> int:
        for i, _, coeff in self.components:
            if i == idx:
                return coeff
        raise InputError(f"no component with index {idx}")

    def total_mass(self) -> int:
        return sum(coeff for _, _, coeff in self.components)

    def render(self) -> str:
        return " + ".join(f"{c}[{o}]#{i}" for i, o, c in self.components)


def z_object(parts) -> ZObject:
    """Build a ZObject from (index, base object, coefficient) triples."""
    return ZObject(components=tuple(sorted((int(i), str(o), int(c)) for i, o, c in parts)))


@dataclass(frozen=True)
class ZTerm:
    row: int
    col: int
    coefficient: int
    arrow: str
    in_rank: int = 0
    out_rank: int = 0

    def key(self) -> tuple:
        return (self.row, self.col, self.arrow)


def _normalize(terms) -> tuple[tuple[int, int, str, int], ...]:
    merged: dict[tuple[int, int, str], int] = {}
    for t in terms:
        merged[t.key()] = merged.get(t.key(), 0) + t.coefficient
    return tuple(
        (row, col, arrow, coeff)
        for (row, col, arrow), coeff in sorted(merged.items())
        if coeff != 0
    )


@dataclass(frozen=True, eq=False)
class ZMorphism:
    source: ZObject
    target: ZObject
    terms: tuple[ZTerm, ...]

    def normal_form(self) -> tuple[tuple[int, int, str, int], ...]:
        return _normalize(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.normal_form() == other.normal_form()
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.normal_form()))

    def terms_into(self, col: int) -> tuple[ZTerm, ...]:
        """Target-side layout of the given component (provenance order)."""
        return tuple(sorted((t for t in self.terms if t.col == col), key=lambda t: t.in_rank))

    def terms_out_of(self, row: int) -> tuple[ZTerm, ...]:
        """Source-side layout of the given component (provenance order)."""
        return tuple(sorted((t for t in self.terms if t.row == row), key=lambda t: t.out_rank))

    def render(self) -> str:
        cells = ", ".join(
            f"({r},{c},{v},{a})" for r, c, a, v in self.normal_form()
        )
        return f"{{{cells}}}: {self.source.render()} -> {self.target.render()}"


def z_morphism(source: ZObject, target: ZObject, terms) -> ZMorphism:
    """Canonical constructor: merge duplicate cells, drop zeros, rank terms.

    ``terms`` holds (row, col, coefficient, arrow) tuples.  Fresh morphisms
    get canonical (row, col, arrow) provenance ranks on both sides.
    """
    merged: dict[tuple[int, int, str], int] = {}
    for row, col, coeff, arrow in terms:
        key = (int(row), int(col), str(arrow))
        merged[key] = merged.get(key, 0) + int(coeff)
    ranked = []
    for pos, ((row, col, arrow), coeff) in enumerate(sorted(merged.items())):
        if coeff == 0:
            continue
        ranked.append(
            ZTerm(row=row, col=col, coefficient=coeff, arrow=arrow, in_rank=pos, out_rank=pos)
        )
    return ZMorphism(source=source, target=target, terms=tuple(ranked))


# =====================================================================
# validation
# =====================================================================


def z_validate(base: FinCat, phi: ZMorphism, subject: str = "zmorphism") -> Report:
    """Structural and marginal check of a coefficient table.

    Structural findings: unknown component indices, unknown arrows, arrows
    whose endpoints do not connect the referenced base objects.  Law
    findings: a row marginal differing from the source coefficient or a
    column marginal differing from the target coefficient.
    """
    rows: list[reports.Finding] = []
    src_idx = set(phi.source.indices())
    tgt_idx = set(phi.target.indices())

    structural_ok = True
    for t in phi.terms:
        tag = (str(t.row), str(t.col), t.arrow)
        if t.row not in src_idx:
            rows.append(reports.structural("term_row_known", tag, "unknown source component index"))
            structural_ok = False
        if t.col not in tgt_idx:
            rows.append(reports.structural("term_col_known", tag, "unknown target component index"))
            structural_ok = False
        if t.arrow not in base.morphisms:
            rows.append(reports.structural("term_arrow_known", tag, "unknown base arrow"))
            structural_ok = False

    if structural_ok:
        for t in phi.terms:
            want = (phi.source.base_object(t.row), phi.target.base_object(t.col))
            if base.morphisms[t.arrow] != want:
                rows.append(
                    reports.structural(
                        "term_arrow_endpoints",
                        (str(t.row), str(t.col), t.arrow),
                        f"arrow endpoints {base.morphisms[t.arrow]} != {want}",
                    )
                )

    norm = phi.normal_form()
    for idx, _obj, coeff in phi.source.components:
        got = sum(v for r, _c, _a, v in norm if r == idx)
        if got != coeff:
            rows.append(
                reports.law("row_marginal", (str(idx),), f"row sum {got} != source coefficient {coeff}")
            )
    for idx, _obj, coeff in phi.target.components:
        got = sum(v for _r, c, _a, v in norm if c == idx)
        if got != coeff:
            rows.append(
                reports.law("column_marginal", (str(idx),), f"column sum {got} != target coefficient {coeff}")
            )

    return Report.collect(subject, rows)


def sign_coherent(phi: ZMorphism) -> bool:
    """True when every cell's sign matches both its row and column mass."""
    norm = phi.normal_form()
    for idx, _obj, coeff in phi.source.components:
        if any(_sign(v) != _sign(coeff) for r, _c, _a, v in norm if r == idx):
            return False
    for idx, _obj, coeff in phi.target.components:
        if any(_sign(v) != _sign(coeff) for _r, c, _a, v in norm if c == idx):
            return False
    return True


# =====================================================================
# units and embeddings
# =====================================================================


def z_identity(base: FinCat, obj: ZObject) -> ZMorphism:
    """Diagonal table of identities; a two-sided unit for composition."""
    terms = []
    for idx, base_obj, coeff in obj.components:
        ident = base.identities.get(base_obj)
        if ident is None:
            raise InputError(f"base object {base_obj} has no identity")
        terms.append((idx, idx, coeff, ident))
    return z_morphism(obj, obj, terms)


def z_scalar_embed(base: FinCat, arrow: str, coefficient: int) -> ZMorphism:
    """Single-component morphism m[X] -> m[Y] carried by one base arrow."""
    if coefficient == 0:
        raise InputError("scalar embedding needs a nonzero coefficient")
    if arrow not in base.morphisms:
        raise InputError(f"unknown base arrow {arrow}")
    src, tgt = base.morphisms[arrow]
    return z_morphism(
        z_object([(1, src, coefficient)]),
        z_object([(1, tgt, coefficient)]),
        [(1, 1, coefficient, arrow)],
    )


# =====================================================================
# interval refinement
# =====================================================================


@dataclass(frozen=True)
class RefinementTable:
    """Joint splitting of two partitions of the same total.

    ``entries`` maps 1-based (row position, column position) to the signed
    mass shared by that row and column.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def row_sums(self) -> tuple[int, ...]:
        out = [0] * len(self.rows)
        for (a, _b), v in self.entries.items():
            out[a - 1] += v
        return tuple(out)

    def col_sums(self) -> tuple[int, ...]:
        out = [0] * len(self.cols)
        for (_a, b), v in self.entries.items():
            out[b - 1] += v
        return tuple(out)

    def to_json_dict(self) -> dict:
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "entries": {f"{a},{b}": v for (a, b), v in sorted(self.entries.items())},
        }


def interval_refinement(rows, cols) -> RefinementTable:
    """Overlap table of two sign-coherent partitions of one total.

    Both sequences are laid out as consecutive intervals along
    ``[0, |total|)``; entry (a, b) is the overlap length of row interval a
    and column interval b, signed by the total's sign.  Raises
    MarginalMismatch when the sums differ and SignIncoherent when any entry
    lacks the total's sign.
    """
    rows = tuple(int(r) for r in rows)
    cols = tuple(int(c) for c in cols)
    total = sum(rows)
    if total != sum(cols):
        raise MarginalMismatch(f"row sum {total} != column sum {sum(cols)}")
    sgn = _sign(total)
    if sgn == 0:
        if rows or cols:
            raise SignIncoherent("zero total cannot carry nonzero entries")
        return RefinementTable(rows=rows, cols=cols, entries={})
    for label, seq in (("row", rows), ("column", cols)):
        for pos, val in enumerate(seq, start=1):
            if _sign(val) != sgn:
                raise SignIncoherent(f"{label} entry {pos} ({val}) does not carry the sign of {total}")

    entries: dict[tuple[int, int], int] = {}
    r_start = 0
    c_pos, c_start = 0, 0
    for a, r in enumerate(rows, start=1):
        r_end = r_start + abs(r)
        while c_pos < len(cols):
            c_end = c_start + abs(cols[c_pos])
            lo, hi = max(r_start, c_start), min(r_end, c_end)
            if hi > lo:
                entries[(a, c_pos + 1)] = sgn * (hi - lo)
            if c_end >= r_end:
                break
            c_pos += 1
            c_start = c_end
        r_start = r_end
    return RefinementTable(rows=rows, cols=cols, entries=entries)


def _forced_table(rows: tuple[int, ...], cols: tuple[int, ...]) -> RefinementTable:
    """Unique marginal-correct table when either side is a single interval."""
    if sum(rows) != sum(cols):
        raise MarginalMismatch(f"row sum {sum(rows)} != column sum {sum(cols)}")
    entries: dict[tuple[int, int], int] = {}
    if len(rows) == 1:
        entries = {(1, b): v for b, v in enumerate(cols, start=1) if v != 0}
    elif len(cols) == 1:
        entries = {(a, 1): v for a, v in enumerate(rows, start=1) if v != 0}
    else:
        raise InputError("forced table needs a singleton side")
    return RefinementTable(rows=rows, cols=cols, entries=entries)


# =====================================================================
# composition
# =====================================================================


def _middle_table(
    middle_idx: int,
    middle_coeff: int,
    row_vals: tuple[int, ...],
    col_vals: tuple[int, ...],
    explicit: dict[int, RefinementTable] | None,
) -> RefinementTable:
    if explicit and middle_idx in explicit:
        table = explicit[middle_idx]
        if table.rows != row_vals or table.cols != col_vals:
            raise MarginalMismatch(
                f"middle {middle_idx}: explicit table is for partitions "
                f"{table.rows}/{table.cols}, not {row_vals}/{col_vals}"
            )
        if table.row_sums() != row_vals or table.col_sums() != col_vals:
            raise MarginalMismatch(f"middle {middle_idx}: explicit table does not reproduce its marginals")
        return table
    if sum(row_vals) != middle_coeff or sum(col_vals) != middle_coeff:
        raise MarginalMismatch(
            f"middle {middle_idx}: splittings {row_vals}/{col_vals} do not sum to {middle_coeff}"
        )
    if len(row_vals) <= 1 or len(col_vals) <= 1:
        return _forced_table(row_vals, col_vals)
    sgn = _sign(middle_coeff)
    if all(_sign(v) == sgn for v in row_vals) and all(_sign(v) == sgn for v in col_vals):
        return interval_refinement(row_vals, col_vals)
    raise SignIncoherent(
        f"middle {middle_idx} mixes signs ({row_vals} against {col_vals}); supply an explicit table"
    )


def _couple(base: FinCat, outer_terms_of, inner: ZMorphism, middle: ZObject, explicit):
    """Pair inner's target-side layouts against outer's source-side layouts.

    Returns raw cells (inner term, outer term, value, composed arrow).
    ``outer_terms_of`` maps a middle index to the outer layout at it.
    """
    cells: list[tuple[ZTerm, ZTerm, int, str]] = []
    for idx, _obj, coeff in middle.components:
        row_terms = inner.terms_into(idx)
        col_terms = outer_terms_of(idx)
        table = _middle_table(
            idx,
            coeff,
            tuple(t.coefficient for t in row_terms),
            tuple(t.coefficient for t in col_terms),
            explicit,
        )
        for (a, b), value in table.entries.items():
            if value == 0:
                continue
            it, ot = row_terms[a - 1], col_terms[b - 1]
            cells.append((it, ot, value, base.compose(ot.arrow, it.arrow)))
    return cells


def _rank_cells(cells) -> tuple[ZTerm, ...]:
    order_in = sorted(
        range(len(cells)),
        key=lambda i: (cells[i][1].in_rank, cells[i][0].in_rank),
    )
    order_out = sorted(
        range(len(cells)),
        key=lambda i: (cells[i][0].out_rank, cells[i][1].out_rank),
    )
    in_pos = {cell: p for p, cell in enumerate(order_in)}
    out_pos = {cell: p for p, cell in enumerate(order_out)}
    return tuple(
        ZTerm(
            row=inner.row,
            col=outer.col,
            coefficient=value,
            arrow=arrow,
            in_rank=in_pos[i],
            out_rank=out_pos[i],
        )
        for i, (inner, outer, value, arrow) in sorted(
            enumerate(cells), key=lambda pair: in_pos[pair[0]]
        )
    )


def z_compose(
    base: FinCat,
    outer: ZMorphism,
    inner: ZMorphism,
    explicit: dict[int, RefinementTable] | None = None,
) -> ZMorphism:
    """Composite "outer after inner" through their shared middle object.

    Per middle component the two splittings are refined by interval overlap
    (or by the forced table when either side is a single term, or by a
    supplied explicit table), and each refined mass is carried by the
    composite of its two arrows.  Raises SignIncoherent when a middle mixes
    signs without an explicit table, MarginalMismatch for tables or
    splittings that do not reproduce the marginals, and InputError when the
    middle objects differ.
    """
    if inner.target != outer.source:
        ours, theirs = set(inner.target.components), set(outer.source.components)
        diff = sorted(ours ^ theirs)
        what = f"first difference {diff[0]}" if diff else "same components"
        raise InputError(f"middle mismatch: target(inner) != source(outer); {what}")
    cells = _couple(base, outer.terms_out_of, inner, inner.target, explicit)
    return ZMorphism(
        source=inner.source,
        target=outer.target,
        terms=_rank_cells(cells),
    )


# =====================================================================
# correspondences (column-free tables)
# =====================================================================


@dataclass(frozen=True, eq=False)
class Correspondence:
    """Row-strict, column-free coefficient table into a target object.

    Each source component is fully split over (target component, arrow)
    slots, but no column marginal is imposed, so a table from a formal sum
    is exactly an independent choice of table per component.  Tables restrict
    along strict morphisms with the same coupling machinery (their rows
    supply each middle exactly), which is what the presheaf layer needs.
    """

    source: ZObject
    target: ZObject
    terms: tuple[ZTerm, ...]

    def normal_form(self) -> tuple[tuple[int, int, str, int], ...]:
        return _normalize(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Correspondence):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.normal_form() == other.normal_form()
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.normal_form()))

    def terms_out_of(self, row: int) -> tuple[ZTerm, ...]:
        return tuple(sorted((t for t in self.terms if t.row == row), key=lambda t: t.out_rank))


def correspondence(source: ZObject, target: ZObject, terms) -> Correspondence:
    merged: dict[tuple[int, int, str], int] = {}
    for row, col, coeff, arrow in terms:
        key = (int(row), int(col), str(arrow))
        merged[key] = merged.get(key, 0) + int(coeff)
    ranked = [
        ZTerm(row=row, col=col, coefficient=coeff, arrow=arrow, in_rank=pos, out_rank=pos)
        for pos, ((row, col, arrow), coeff) in enumerate(sorted(merged.items()))
        if coeff != 0
    ]
    return Correspondence(source=source, target=target, terms=tuple(ranked))


def restrict_correspondence(base: FinCat, table: Correspondence, phi: ZMorphism) -> Correspondence:
    """Pull a table back along a strict morphism: table ∘ phi."""
    if phi.target != table.source:
        raise InputError("restriction needs target(phi) == source(table)")
    cells = _couple(base, table.terms_out_of, phi, phi.target, None)
    return Correspondence(source=phi.source, target=table.target, terms=_rank_cells(cells))


def slice_correspondence(table: Correspondence, idx: int) -> Correspondence:
    """Component restriction: keep the rows of one source component."""
    coeff = table.source.coefficient(idx)
    piece = z_object([(idx, table.source.base_object(idx), coeff)])
    kept = sorted((t for t in table.terms if t.row == idx), key=lambda t: t.out_rank)
    return Correspondence(
        source=piece,
        target=table.target,
        terms=tuple(
            ZTerm(row=t.row, col=t.col, coefficient=t.coefficient, arrow=t.arrow, in_rank=p, out_rank=p)
            for p, t in enumerate(kept)
        ),
    )


# =====================================================================
# bounded hom enumeration
# =====================================================================


def _sign_splits(mass: int, slots: int):
    """All ways to write ``mass`` as an ordered sum of ``slots`` parts that
    are each zero or of mass's sign (zero parts mean the slot is unused)."""
    if slots == 0:
        if mass == 0:
            yield ()
        return
    sgn = _sign(mass)
    for head in range(0, abs(mass) + 1):
        for rest in _sign_splits(sgn * (abs(mass) - head), slots - 1):
            yield (sgn * head,) + rest


def enumerate_hom(base: FinCat, src: ZObject, tgt: ZObject) -> tuple[ZMorphism, ...]:
    """All sign-coherent morphisms src -> tgt, in a canonical order.

    Finite because sign coherence bounds each cell by its column mass.  The
    hom-set is empty whenever the total masses differ.
    """
    if src.total_mass() != tgt.total_mass():
        return ()
    per_component: list[list[tuple[tuple[int, int, str, int], ...]]] = []
    for idx, obj, coeff in src.components:
        slots = [
            (jdx, arrow)
            for jdx, jobj, jcoeff in tgt.components
            if _sign(jcoeff) == _sign(coeff)
            for arrow in base.hom(obj, jobj)
        ]
        choices = [
            tuple(
                (idx, jdx, part, arrow)
                for (jdx, arrow), part in zip(slots, split)
                if part != 0
            )
            for split in _sign_splits(coeff, len(slots))
        ]
        per_component.append(choices)

    out = []
    for combo in itertools.product(*per_component):
        terms = [cell for group in combo for cell in group]
        cols: dict[int, int] = {}
        for _r, c, v, _a in terms:
            cols[c] = cols.get(c, 0) + v
        if all(cols.get(jdx, 0) == jcoeff for jdx, _o, jcoeff in tgt.components):
            out.append(z_morphism(src, tgt, terms))
    out.sort(key=lambda m: m.normal_form())
    return tuple(out)


def enumerate_correspondences(base: FinCat, src: ZObject, tgt: ZObject) -> tuple[Correspondence, ...]:
    """All row-strict sign-coherent tables src -> tgt (no column constraint)."""
    per_component: list[list[tuple[tuple[int, int, str, int], ...]]] = []
    for idx, obj, coeff in src.components:
        slots = [
            (jdx, arrow)
            for jdx, jobj, _jc in tgt.components
            for arrow in base.hom(obj, jobj)
        ]
        choices = [
            tuple(
                (idx, jdx, part, arrow)
                for (jdx, arrow), part in zip(slots, split)
                if part != 0
            )
            for split in _sign_splits(coeff, len(slots))
        ]
        per_component.append(choices)
    out = [
        correspondence(src, tgt, [cell for group in combo for cell in group])
        for combo in itertools.product(*per_component)
    ]
    out.sort(key=lambda m: m.normal_form())
    return tuple(out)
