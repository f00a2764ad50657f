"""Aritmética exata de partições de [n] ∪ [n]′ (monoide de partições P_n)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

# Pontos superiores são inteiros 1..n; pontos inferiores i′ são codificados como -i.
Point = int
Equivalence = tuple[int, ...]


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    degree: int
    labeling: tuple[int, ...]

    def __str__(self) -> str:
        return format_partition(self)


@dataclass(frozen=True)
class TwistedElement:
    shift: int
    part: Partition

    def __str__(self) -> str:
        return f"{self.shift} | {format_partition(self.part)}"


@dataclass(frozen=True)
class IdempotentDecomposition:
    classes: tuple[frozenset[int], ...]
    component_ranks: tuple[int, ...]
    certified: bool


def canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


def _point_index(n: int, point: Point) -> int:
    if 1 <= point <= n:
        return point - 1
    if -n <= point <= -1:
        return n - point - 1
    raise PartitionError(f"Ponto fora do intervalo para n={n}: {_point_text(point)}")


def _point_text(point: Point) -> str:
    return f"{-point}'" if point < 0 else str(point)


def partition_from_blocks(n: int, blocks: Iterable[Iterable[Point]]) -> Partition:
    if n < 1:
        raise PartitionError(f"Grau inválido: {n}")
    labels: list[int | None] = [None] * (2 * n)
    for block_id, block in enumerate(blocks):
        points = list(block)
        if not points:
            raise PartitionError("Bloco vazio")
        for point in points:
            idx = _point_index(n, point)
            if labels[idx] is not None:
                raise PartitionError(f"Ponto repetido: {_point_text(point)}")
            labels[idx] = block_id
    for idx, lab in enumerate(labels):
        if lab is None:
            missing = idx + 1 if idx < n else -(idx - n + 1)
            raise PartitionError(f"Ponto ausente: {_point_text(missing)}")
    return Partition(n, canonical_labels(labels))  # type: ignore[arg-type]


def identity(n: int) -> Partition:
    return Partition(n, tuple(range(n)) * 2)


def blocks(a: Partition) -> tuple[tuple[frozenset[int], frozenset[int]], ...]:
    """Blocos na ordem canônica, como pares (parte superior, parte inferior)."""
    n = a.degree
    k = max(a.labeling) + 1
    upper: list[set[int]] = [set() for _ in range(k)]
    lower: list[set[int]] = [set() for _ in range(k)]
    for i, lab in enumerate(a.labeling):
        if i < n:
            upper[lab].add(i + 1)
        else:
            lower[lab].add(i - n + 1)
    return tuple((frozenset(u), frozenset(l)) for u, l in zip(upper, lower))


def transversals(a: Partition) -> tuple[tuple[frozenset[int], frozenset[int]], ...]:
    return tuple(b for b in blocks(a) if b[0] and b[1])


def direct_sum(a: Partition, b: Partition) -> Partition:
    """a ⊕ b sobre [n+m], com os pontos de b deslocados por n."""
    n, m = a.degree, b.degree
    shift = max(a.labeling) + 1
    lab_b = [x + shift for x in b.labeling]
    labels = list(a.labeling[:n]) + lab_b[:m] + list(a.labeling[n:]) + lab_b[m:]
    return Partition(n + m, canonical_labels(labels))


def format_partition(a: Partition) -> str:
    parts = []
    for up, low in blocks(a):
        tokens = [str(i) for i in sorted(up)] + [f"{i}'" for i in sorted(low)]
        parts.append(" ".join(tokens))
    return "; ".join(parts)


def parse_partition(text: str, n: int | None = None) -> Partition:
    raw_blocks: list[list[Point]] = []
    top = 0
    for chunk in text.split(";"):
        tokens = chunk.split()
        if not tokens:
            raise PartitionError(f"Bloco vazio em {text!r}")
        block: list[Point] = []
        for tok in tokens:
            lower = tok.endswith("'")
            digits = tok[:-1] if lower else tok
            if not digits.isdigit():
                raise PartitionError(f"Ponto inválido {tok!r} em {text!r}")
            value = int(digits)
            top = max(top, value)
            block.append(-value if lower else value)
        raw_blocks.append(block)
    return partition_from_blocks(n if n is not None else top, raw_blocks)


def _same_degree(a: Partition, b: Partition) -> int:
    if a.degree != b.degree:
        raise PartitionError(f"Graus diferentes: {a.degree} e {b.degree}")
    return a.degree


def multiply_with_floats(a: Partition, b: Partition) -> tuple[Partition, int]:
    """Produto ab e o número Φ(a,b) de componentes contidas na linha do meio."""
    n = _same_degree(a, b)
    la, lb = a.labeling, b.labeling
    ka = max(la) + 1
    kb = max(lb) + 1
    parent = list(range(ka + kb))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # o ponto i″ liga o bloco inferior de a ao bloco superior de b
    for i in range(n):
        x = find(la[n + i])
        y = find(ka + lb[i])
        if x != y:
            if x < y:
                parent[y] = x
            else:
                parent[x] = y

    out = [find(la[i]) for i in range(n)] + [find(ka + lb[n + i]) for i in range(n)]
    floats = len({find(x) for x in range(ka + kb)}) - len(set(out))
    return Partition(n, canonical_labels(out)), floats


def multiply(a: Partition, b: Partition) -> Partition:
    return multiply_with_floats(a, b)[0]


def twisted_multiply(x: TwistedElement, y: TwistedElement) -> TwistedElement:
    part, floats = multiply_with_floats(x.part, y.part)
    return TwistedElement(x.shift + y.shift + floats, part)


def twisted_identity(n: int) -> TwistedElement:
    return TwistedElement(0, identity(n))


def twisted_power(x: TwistedElement, k: int) -> TwistedElement:
    if k < 1:
        raise PartitionError(f"Expoente deve ser positivo: {k}")
    out = x
    for _ in range(k - 1):
        out = twisted_multiply(out, x)
    return out


def involution(a: Partition) -> Partition:
    n = a.degree
    lab = a.labeling
    return Partition(n, canonical_labels(lab[n:] + lab[:n]))


def rank(a: Partition) -> int:
    n = a.degree
    return len(set(a.labeling[:n]) & set(a.labeling[n:]))


def ker(a: Partition) -> Equivalence:
    return canonical_labels(a.labeling[: a.degree])


def coker(a: Partition) -> Equivalence:
    return canonical_labels(a.labeling[a.degree :])


def dom(a: Partition) -> frozenset[int]:
    n = a.degree
    low = set(a.labeling[n:])
    return frozenset(i + 1 for i in range(n) if a.labeling[i] in low)


def codom(a: Partition) -> frozenset[int]:
    n = a.degree
    up = set(a.labeling[:n])
    return frozenset(i + 1 for i in range(n) if a.labeling[n + i] in up)


def class_count(sigma: Equivalence) -> int:
    return max(sigma) + 1 if sigma else 0


def ntu(a: Partition) -> int:
    return class_count(ker(a)) - rank(a)


def ntd(a: Partition) -> int:
    return class_count(coker(a)) - rank(a)


def nt(a: Partition) -> int:
    return ntu(a) + ntd(a)


def equivalence_classes(sigma: Equivalence) -> tuple[frozenset[int], ...]:
    groups: dict[int, set[int]] = {}
    for i, lab in enumerate(sigma):
        groups.setdefault(lab, set()).add(i + 1)
    return tuple(frozenset(groups[k]) for k in sorted(groups))


def equivalence_from_classes(n: int, classes: Iterable[Iterable[int]]) -> Equivalence:
    labels = [-1] * n
    for k, cls in enumerate(classes):
        for i in cls:
            labels[i - 1] = k
    if -1 in labels:
        raise PartitionError(f"Classes não cobrem [1..{n}]")
    return canonical_labels(labels)


def equivalence_leq(sigma: Equivalence, tau: Equivalence) -> bool:
    """σ ⊆ τ como relações."""
    image: dict[int, int] = {}
    for s, t in zip(sigma, tau):
        if image.setdefault(s, t) != t:
            return False
    return True


def join_equivalences(sigma: Equivalence, tau: Equivalence) -> Equivalence:
    n = len(sigma)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rel in (sigma, tau):
        first: dict[int, int] = {}
        for i, lab in enumerate(rel):
            j = first.setdefault(lab, i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return canonical_labels([find(i) for i in range(n)])


def id_of_equivalence(sigma: Equivalence) -> Partition:
    return Partition(len(sigma), canonical_labels(tuple(sigma) * 2))


def is_idempotent(a: Partition) -> bool:
    return multiply(a, a) == a


def is_projection(a: Partition) -> bool:
    return involution(a) == a and is_idempotent(a)


def d_projection(a: Partition) -> Partition:
    return id_of_equivalence(ker(a))


def r_projection(a: Partition) -> Partition:
    return id_of_equivalence(coker(a))


def idempotent_components(a: Partition) -> IdempotentDecomposition:
    """Decomposição pelas classes de KER(a) = ker(a) ∨ coker(a).

    Certifica idempotência quando cada bloco cabe em uma única classe X ∪ X′
    e cada componente tem no máximo um bloco transversal.
    """
    super_kernel = join_equivalences(ker(a), coker(a))
    classes = equivalence_classes(super_kernel)
    ranks = [0] * len(classes)
    certified = True
    for up, low in blocks(a):
        owners = {super_kernel[i - 1] for i in up} | {super_kernel[i - 1] for i in low}
        if len(owners) != 1:
            certified = False
            continue
        if up and low:
            ranks[owners.pop()] += 1
    if any(r > 1 for r in ranks):
        certified = False
    return IdempotentDecomposition(classes, tuple(ranks), certified)
