# quotient_lab/domain/services/ring_constructors.py
"""Constructores de anillos del corpus y el intérprete de expresiones como 'T2(F_3)'."""

import itertools
import logging
import re
from dataclasses import replace
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from sympy import isprime

from quotient_lab.domain.models.errors import DefinitionError, ParseError
from quotient_lab.domain.models.ring import FiniteRing
from quotient_lab.domain.services.ring_service import check_ring_axioms, validate_ring

logger = logging.getLogger(__name__)


def _build(moduli, structure, unit, name: str) -> FiniteRing:
    moduli = tuple(int(m) for m in moduli)
    ring = FiniteRing(
        moduli,
        np.mod(np.asarray(structure, dtype=np.int64), moduli),
        tuple(int(u) % m for u, m in zip(unit, moduli)),
        name,
    )
    check_ring_axioms(ring)
    return ring


def cyclic_ring(n: int) -> FiniteRing:
    if n < 2:
        raise DefinitionError(f"Z/{n} no es un anillo con 1 != 0")
    return _build((n,), [[[1]]], (1,), f"Z/{n}")


def prime_field(p: int) -> FiniteRing:
    if not isprime(p):
        raise DefinitionError(f"{p} no es primo")
    return _build((p,), [[[1]]], (1,), f"F_{p}")


def product_ring(*rings: FiniteRing) -> FiniteRing:
    """Producto directo R_1 x ... x R_n con estructura diagonal por bloques."""
    moduli: List[int] = []
    offsets = []
    for ring in rings:
        offsets.append(len(moduli))
        moduli.extend(ring.moduli)
    k = len(moduli)
    structure = np.zeros((k, k, k), dtype=np.int64)
    unit = np.zeros(k, dtype=np.int64)
    for ring, off in zip(rings, offsets):
        r = ring.rank
        structure[off : off + r, off : off + r, off : off + r] = ring.structure
        unit[off : off + r] = ring.unit
    name = " x ".join(str(r) for r in rings)
    return _build(moduli, structure, unit, name)


def _block(s: int, width: int) -> slice:
    return slice(s * width, (s + 1) * width)


def _matrix_like(
    n: int, base: FiniteRing, positions: Sequence[Tuple[int, int]], name: str
) -> FiniteRing:
    """Anillo con base E_ab ⊗ e_i para (a, b) en `positions` (cerrado bajo producto)."""
    kb = base.rank
    slot = {pos: s for s, pos in enumerate(positions)}
    k = len(positions) * kb
    moduli = [base.moduli[i] for _ in positions for i in range(kb)]
    structure = np.zeros((k, k, k), dtype=np.int64)
    for (a, b), s in slot.items():
        for (c, d), t in slot.items():
            if b != c:
                continue
            u = slot[(a, d)]
            structure[_block(s, kb), _block(t, kb), _block(u, kb)] = base.structure
    unit = np.zeros(k, dtype=np.int64)
    for a in range(n):
        s = slot[(a, a)]
        unit[s * kb : (s + 1) * kb] = base.unit
    return _build(moduli, structure, unit, name)


def matrix_ring(n: int, base: FiniteRing) -> FiniteRing:
    positions = [(a, b) for a in range(n) for b in range(n)]
    return _matrix_like(n, base, positions, f"M_{n}({base})")


def upper_triangular_ring(n: int, base: FiniteRing) -> FiniteRing:
    positions = [(a, b) for a in range(n) for b in range(a, n)]
    return _matrix_like(n, base, positions, f"T_{n}({base})")


def _graded_by_cyclic(base: FiniteRing, m: int, wrap: bool, name: str) -> FiniteRing:
    """base[x]/(x^m) si wrap es False; base[C_m] (x^m = 1) si wrap es True."""
    kb = base.rank
    k = m * kb
    moduli = [base.moduli[i] for _ in range(m) for i in range(kb)]
    structure = np.zeros((k, k, k), dtype=np.int64)
    for p, q in itertools.product(range(m), repeat=2):
        degree = p + q
        if degree >= m:
            if not wrap:
                continue
            degree -= m
        structure[_block(p, kb), _block(q, kb), _block(degree, kb)] = base.structure
    unit = np.zeros(k, dtype=np.int64)
    unit[:kb] = base.unit
    return _build(moduli, structure, unit, name)


def truncated_polynomial_ring(base: FiniteRing, m: int) -> FiniteRing:
    if m < 1:
        raise DefinitionError("el exponente de truncamiento debe ser positivo")
    return _graded_by_cyclic(base, m, wrap=False, name=f"{base}[x]/(x^{m})")


def group_ring(base: FiniteRing, n: int) -> FiniteRing:
    """Anillo de grupo base[C_n] del grupo cíclico de orden n."""
    if n < 1:
        raise DefinitionError("el orden del grupo debe ser positivo")
    return _graded_by_cyclic(base, n, wrap=True, name=f"{base}[C_{n}]")


def path_algebra(
    p: int,
    n_vertices: int,
    arrows: Sequence[Sequence[int]],
    zero_relations: Sequence[Sequence[int]] = (),
    name: Optional[str] = None,
) -> FiniteRing:
    """
    Álgebra de caminos sobre F_p de un carcaj acíclico, módulo relaciones nulas.

    Args:
        p: característica (primo)
        n_vertices: número de vértices 0..n-1
        arrows: lista de pares (origen, destino)
        zero_relations: caminos (listas de índices de flechas) que se anulan

    Returns:
        FiniteRing cuya base son los caminos no nulos; el producto p·q es la
        concatenación "primero p, después q".
    """
    if not isprime(p):
        raise DefinitionError(f"{p} no es primo")

    quiver = nx.MultiDiGraph()
    quiver.add_nodes_from(range(n_vertices))
    for key, (src, tgt) in enumerate(arrows):
        quiver.add_edge(int(src), int(tgt), key=key)
    if not nx.is_directed_acyclic_graph(quiver):
        raise DefinitionError("el carcaj debe ser acíclico")

    relations = [tuple(r) for r in zero_relations]
    for rel in relations:
        for a, b in zip(rel, rel[1:]):
            if arrows[a][1] != arrows[b][0]:
                raise DefinitionError(f"la relación {list(rel)} no es un camino")

    def is_zero(path: Tuple[int, ...]) -> bool:
        return any(
            path[i : i + len(rel)] == rel
            for rel in relations
            for i in range(len(path) - len(rel) + 1)
        )

    # Caminos: ('e', v) triviales y tuplas de flechas
    paths: List[Tuple] = [("e", v) for v in range(n_vertices)]
    frontier = [(a,) for a in range(len(arrows))]
    while frontier:
        nxt = []
        for path in frontier:
            if is_zero(path):
                continue
            paths.append(path)
            end = arrows[path[-1]][1]
            for _, _, key in quiver.out_edges(end, keys=True):
                nxt.append(path + (key,))
        frontier = nxt

    def source(path) -> int:
        return path[1] if path[0] == "e" else arrows[path[0]][0]

    def target(path) -> int:
        return path[1] if path[0] == "e" else arrows[path[-1]][1]

    index: Dict[Tuple, int] = {path: i for i, path in enumerate(paths)}
    k = len(paths)
    structure = np.zeros((k, k, k), dtype=np.int64)
    for (x, i), (y, j) in itertools.product(index.items(), repeat=2):
        if target(x) != source(y):
            continue
        if x[0] == "e":
            product = y
        elif y[0] == "e":
            product = x
        else:
            product = x + y
        if product in index:
            structure[i, j, index[product]] = 1

    unit = [1 if path[0] == "e" else 0 for path in paths]
    label = name or f"F_{p}Q({n_vertices} vértices, {len(arrows)} flechas)"
    logger.debug(f"Álgebra de caminos {label}: dimensión {k}")
    return _build([p] * k, structure, unit, label)


_TOKEN = re.compile(
    r"\s*(?:(?P<cyclic>Z/(?P<n>\d+))|(?P<field>F_(?P<p>\d+))"
    r"|(?P<matrix>(?P<kind>[MT])_?(?P<size>\d+)\()"
    r"|(?P<poly>\[x\]/\(x\^(?P<m>\d+)\))|(?P<group>\[C_(?P<g>\d+)\])"
    r"|(?P<times>x|×)|(?P<lpar>\()|(?P<rpar>\)))"
)


class ConstructorParser:
    """Intérprete descendente recursivo de expresiones de constructor.

    Gramática:
        expr   := factor ("x" factor)*
        factor := atom ("[x]/(x^m)" | "[C_n]")*
        atom   := "Z/n" | "F_p" | "Mn(" expr ")" | "Tn(" expr ")" | "(" expr ")"
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, f"'{self.text}', columna {self.pos + 1}")

    def peek(self) -> Optional[re.Match]:
        if self.pos >= len(self.text.rstrip()):
            return None
        match = _TOKEN.match(self.text, self.pos)
        if match is None or match.end() == self.pos:
            raise self.error("símbolo inesperado")
        return match

    def take(self) -> re.Match:
        match = self.peek()
        if match is None:
            raise self.error("fin de expresión inesperado")
        self.pos = match.end()
        return match

    def parse(self) -> FiniteRing:
        ring = self.expr()
        if self.peek() is not None:
            raise self.error("texto sobrante")
        return ring

    def expr(self) -> FiniteRing:
        factors = [self.factor()]
        while (match := self.peek()) is not None and match.group("times"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else product_ring(*factors)

    def factor(self) -> FiniteRing:
        ring = self.atom()
        while (match := self.peek()) is not None and (
            match.group("poly") or match.group("group")
        ):
            self.take()
            if match.group("poly"):
                ring = truncated_polynomial_ring(ring, int(match.group("m")))
            else:
                ring = group_ring(ring, int(match.group("g")))
        return ring

    def atom(self) -> FiniteRing:
        match = self.take()
        if match.group("cyclic"):
            return cyclic_ring(int(match.group("n")))
        if match.group("field"):
            return prime_field(int(match.group("p")))
        if match.group("matrix") or match.group("lpar"):
            inner = self.expr()
            closing = self.take()
            if not closing.group("rpar"):
                raise self.error("se esperaba ')'")
            if match.group("lpar"):
                return inner
            size = int(match.group("size"))
            if match.group("kind") == "M":
                return matrix_ring(size, inner)
            return upper_triangular_ring(size, inner)
        raise self.error("se esperaba un anillo")


def parse_constructor(text: str) -> FiniteRing:
    """Construye el anillo descrito por una expresión como 'T2(F_3)' o 'F_2 x F_3'."""
    return ConstructorParser(text).parse()


def ring_from_definition(
    definition: Union[str, Mapping[str, Any]], name: str = ""
) -> FiniteRing:
    """
    Anillo a partir de una definición del corpus.

    Acepta una expresión de constructor, un bloque 'path' con los argumentos de
    `path_algebra` o constantes de estructura en línea ('moduli', 'unit', 'mul').
    """
    if isinstance(definition, str):
        ring = parse_constructor(definition)
    elif "path" in definition:
        block = definition["path"]
        try:
            ring = path_algebra(
                int(block["p"]),
                int(block["vertices"]),
                block.get("arrows", []),
                block.get("relations", []),
            )
        except (KeyError, TypeError) as e:
            raise DefinitionError(f"bloque 'path' mal formado: {e}") from e
    else:
        ring = validate_ring(definition)
    return replace(ring, name=name) if name else ring
