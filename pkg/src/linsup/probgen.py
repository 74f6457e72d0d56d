"""Construction of LP instances with exactly prescribed condition numbers.

An instance is the data of ``min <c, x>  s.t.  A x <= b,  lower <= x <= upper``
where ``A`` is built by reversing a singular value decomposition: random
semi-orthogonal factors ``U`` (m x q, orthonormal columns) and ``V``
(q x n, orthonormal rows) are fixed, and a designed diagonal of singular
values imposes the condition number.  Choosing ``b = A*1 + 1`` and the
symmetric box ``[-100, 100]^n`` makes the all-ones vector strictly
feasible with margin 1 on every row.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .densela import as_matrix, random_semi_orthogonal

__all__ = [
    "FormatError",
    "SpectrumSpec",
    "InstanceMeta",
    "LpInstance",
    "design_spectrum",
    "assemble",
    "generate_instance",
    "write_instance",
    "read_instance",
    "export_mps",
    "DEFAULT_SCALE",
    "BOX_HALF_WIDTH",
    "GENERATOR_NAME",
    "FORMAT_VERSION",
]

DEFAULT_SCALE = 10.0
BOX_HALF_WIDTH = 100.0
GENERATOR_NAME = "pcg64"
FORMAT_VERSION = 1

MAGIC = b"LSUP"
# magic, version, m, n, kappa, scale, seed -- all little endian
_HEADER = struct.Struct("<4sIQQddQ")


class FormatError(ValueError):
    """An instance file is malformed; ``byte_offset`` locates the defect."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (at byte offset {byte_offset})")
        self.byte_offset = byte_offset


@dataclass(frozen=True)
class SpectrumSpec:
    """Designed singular values and the parameters that produced them.

    ``sigma`` holds q strictly positive, non-increasing values with
    ``sigma[0] / sigma[-1] == kappa`` (to ~1 ulp) and ``sigma[-1] == 1/s``.
    """

    kappa: float
    q: int
    s: float
    t: float
    sigma: np.ndarray


def design_spectrum(kappa: float, q: int, s: float = DEFAULT_SCALE) -> SpectrumSpec:
    """Design q singular values whose extremes have ratio exactly ``kappa``.

    The i-th value (1-based) is ``t / z_i + (1 - t) / s`` with mixing
    weight ``t = (kappa - 1) / (q - 1)`` and ``z_i = s * i / q``, i.e. a
    roughly 1/i-shaped decay ending at ``sigma_q = 1/s``.  The formula is
    evaluated in the factored form ``(t * (q / i) + (1 - t)) / s`` which
    yields the endpoint exactly in floating point.
    """
    if not kappa >= 1.0:
        raise ValueError(f"kappa must be >= 1, got {kappa}")
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if not s > 0.0:
        raise ValueError(f"s must be positive, got {s}")
    t = (kappa - 1.0) / (q - 1.0)
    i = np.arange(1, q + 1, dtype=np.float64)
    sigma = (t * (q / i) + (1.0 - t)) / s
    sigma.flags.writeable = False
    return SpectrumSpec(kappa=float(kappa), q=int(q), s=float(s), t=float(t), sigma=sigma)


@dataclass(frozen=True)
class InstanceMeta:
    m: int
    n: int
    kappa: float
    seed: int
    s: float
    generator: str = GENERATOR_NAME
    format_version: int = FORMAT_VERSION


@dataclass(frozen=True)
class LpInstance:
    """Full problem data plus generation metadata."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    meta: InstanceMeta


def _factor_streams(seed):
    """Three independent child streams (U, V, c) derived from one seed."""
    if isinstance(seed, np.random.SeedSequence):
        root = seed
    else:
        root = np.random.SeedSequence(int(seed))
    return root.spawn(3)


def assemble(spec: SpectrumSpec, m: int, n: int, seed, u=None, v=None) -> np.ndarray:
    """Multiply out ``U diag(sigma) V`` for random semi-orthogonal U, V.

    ``u`` and ``v`` are test hooks: when given they replace the random
    factors (``u`` must be m x q with orthonormal columns, ``v`` q x n
    with orthonormal rows).  The same seed always produces bit-identical
    output.
    """
    q = min(m, n)
    if spec.q != q:
        raise ValueError(f"spectrum has q={spec.q} but min(m, n)={q}")
    seed_u, seed_v, _ = _factor_streams(seed)
    if u is None:
        u = random_semi_orthogonal(m, q, seed_u)
    else:
        u = as_matrix(u, "u")
        if u.shape != (m, q):
            raise ValueError(f"u must be {m}x{q}, got {u.shape}")
    if v is None:
        v = random_semi_orthogonal(q, n, seed_v)
    else:
        v = as_matrix(v, "v")
        if v.shape != (q, n):
            raise ValueError(f"v must be {q}x{n}, got {v.shape}")
    return (u * spec.sigma) @ v


def generate_instance(
    m: int, n: int, kappa: float, seed: int, s: float = DEFAULT_SCALE
) -> LpInstance:
    """Generate a random LP instance with condition number ``kappa``.

    ``b = A*1 + 1`` so the all-ones vector satisfies every row with margin
    exactly 1, the box is ``[-100, 100]^n``, and ``c`` has i.i.d. standard
    normal entries from the third child stream of ``seed``.
    """
    if m < 2 or n < 2:
        raise ValueError(f"m and n must be >= 2, got {m}x{n}")
    spec = design_spectrum(kappa, min(m, n), s)
    a = assemble(spec, m, n, seed)
    ones = np.ones(n)
    b = a @ ones + 1.0
    _, _, seed_c = _factor_streams(seed)
    rng_c = np.random.default_rng(seed_c)
    c = rng_c.standard_normal(n)
    while not np.any(c):  # pragma: no cover - probability zero
        c = rng_c.standard_normal(n)
    meta = InstanceMeta(m=m, n=n, kappa=float(kappa), seed=int(seed), s=float(s))
    return LpInstance(
        a=a,
        b=b,
        c=c,
        lower=np.full(n, -BOX_HALF_WIDTH),
        upper=np.full(n, BOX_HALF_WIDTH),
        meta=meta,
    )


def write_instance(inst: LpInstance, path) -> None:
    """Serialize an instance to the binary v1 format (bit-exact round trip)."""
    m, n = inst.a.shape
    header = _HEADER.pack(
        MAGIC, FORMAT_VERSION, m, n, inst.meta.kappa, inst.meta.s, inst.meta.seed
    )
    with open(path, "wb") as fh:
        fh.write(header)
        for arr in (inst.a, inst.b, inst.c, inst.lower, inst.upper):
            fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def _take_floats(data: bytes, offset: int, count: int, section: str) -> tuple[np.ndarray, int]:
    nbytes = count * 8
    if len(data) - offset < nbytes:
        raise FormatError(
            f"truncated file: section {section} needs {nbytes} bytes "
            f"({count} float64 values) but only {len(data) - offset} remain",
            offset,
        )
    arr = np.frombuffer(data, dtype="<f8", count=count, offset=offset).copy()
    return arr, offset + nbytes


def read_instance(path) -> LpInstance:
    """Read an instance written by :func:`write_instance`."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < _HEADER.size:
        raise FormatError(
            f"truncated header: need {_HEADER.size} bytes, got {len(data)}", len(data)
        )
    magic, version, m, n, kappa, s, seed = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}", 0)
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}", 4)
    if m < 1 or n < 1 or m * n > 500_000_000:
        raise FormatError(f"implausible dimensions {m}x{n}", 8)
    offset = _HEADER.size
    a_flat, offset = _take_floats(data, offset, m * n, "A")
    b, offset = _take_floats(data, offset, m, "b")
    c, offset = _take_floats(data, offset, n, "c")
    lower, offset = _take_floats(data, offset, n, "lower")
    upper, offset = _take_floats(data, offset, n, "upper")
    if offset != len(data):
        raise FormatError(
            f"trailing garbage: expected file length {offset}, got {len(data)}", offset
        )
    for name, arr in (("A", a_flat), ("b", b), ("c", c), ("lower", lower), ("upper", upper)):
        if not np.isfinite(arr).all():
            raise FormatError(f"non-finite values in section {name}", _HEADER.size)
    meta = InstanceMeta(m=m, n=n, kappa=kappa, seed=seed, s=s)
    return LpInstance(
        a=a_flat.reshape(m, n), b=b, c=c, lower=lower, upper=upper, meta=meta
    )


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def export_mps(inst: LpInstance, path) -> None:
    """Write the instance as an MPS file (minimization, L rows, full bounds).

    Values are printed with 17 significant digits, which overflows the
    strict fixed column layout, so fields are whitespace-aligned in the
    free-format style that every current solver accepts.
    """
    m, n = inst.a.shape
    rname = [f"R{i + 1:07d}" for i in range(m)]
    xname = [f"X{j + 1:07d}" for j in range(n)]
    lines = [f"NAME          LSUP_{m}x{n}", "ROWS", " N  COST"]
    for name in rname:
        lines.append(f" L  {name}")
    lines.append("COLUMNS")
    for j in range(n):
        lines.append(f"    {xname[j]}  COST  {_fmt(inst.c[j])}")
        col = inst.a[:, j]
        for i in range(m):
            lines.append(f"    {xname[j]}  {rname[i]}  {_fmt(col[i])}")
    lines.append("RHS")
    for i in range(m):
        lines.append(f"    RHS  {rname[i]}  {_fmt(inst.b[i])}")
    lines.append("BOUNDS")
    for j in range(n):
        lines.append(f" LO BND  {xname[j]}  {_fmt(inst.lower[j])}")
        lines.append(f" UP BND  {xname[j]}  {_fmt(inst.upper[j])}")
    lines.append("ENDATA")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
