"""Line-oriented text formats for curvature tensors and bundle-valued forms.

Tensor file::

    format curvop-tensor
    version 1
    n 2
    r 2
    entry 1 2 1 1 1.0 0.0      # j k lambda mu re im, 1-based

Form file::

    format curvop-form
    version 1
    n 2
    r 1
    p 1
    q 0
    fiber E                    # or E*
    coef 1 - 1 1.0 0.0         # J K lambda re im; J, K comma lists, '-' if empty

Blank lines and ``#`` comments are ignored. Unlisted slots are zero.
Numbers are written with 17 significant digits, which round-trips doubles.
"""
from __future__ import annotations

import io
import os
from pathlib import Path

import numpy as np

from .curvature import CurvatureTensor, validate
from .errors import InputError
from .forms import BundleForm
from .multiindex import MultiIndex, position

TENSOR_FORMAT = "curvop-tensor"
FORM_FORMAT = "curvop-form"
VERSION = 1


class ParseError(InputError):
    def __init__(self, msg, lineno=None, source="<input>"):
        where = f"{source}:{lineno}: " if lineno is not None else f"{source}: "
        super().__init__(where + msg)


def _read_text(source) -> tuple[str, str]:
    if isinstance(source, (str, os.PathLike)) and not (isinstance(source, str) and "\n" in source):
        path = Path(source)
        try:
            return path.read_text(), str(path)
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    if isinstance(source, str):
        return source, "<string>"
    return source.read(), getattr(source, "name", "<stream>")


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok, lineno, name, src):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{name} must be an integer, got {tok!r}", lineno, src) from None


def _float(tok, lineno, name, src):
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"{name} must be a number, got {tok!r}", lineno, src) from None


def _parse(text, src, fmt, header_keys, record_key, record_len, optional_keys=()):
    header = {}
    records = []
    for lineno, toks in _lines(text):
        key = toks[0]
        if key == record_key:
            if len(toks) != record_len + 1:
                raise ParseError(
                    f"'{record_key}' record needs {record_len} fields, got {len(toks) - 1}", lineno, src
                )
            records.append((lineno, toks[1:]))
        elif key in header_keys or key in optional_keys or key in ("format", "version"):
            if len(toks) != 2:
                raise ParseError(f"header '{key}' takes exactly one value", lineno, src)
            if key in header:
                raise ParseError(f"duplicate header '{key}'", lineno, src)
            header[key] = (lineno, toks[1])
        else:
            raise ParseError(f"unknown record type {key!r}", lineno, src)
    if "format" in header and header["format"][1] != fmt:
        raise ParseError(f"expected format {fmt!r}, got {header['format'][1]!r}", header["format"][0], src)
    if "version" not in header:
        raise ParseError("missing 'version' header", None, src)
    ver = _int(header["version"][1], header["version"][0], "version", src)
    if ver != VERSION:
        raise ParseError(f"unsupported version {ver}", header["version"][0], src)
    for k in header_keys:
        if k not in header:
            raise ParseError(f"missing '{k}' header", None, src)
    return header, records


def parse_tensor_text(text: str, src="<string>", symmetrize=False, tol=1e-12) -> CurvatureTensor:
    header, records = _parse(text, src, TENSOR_FORMAT, ("n", "r"), "entry", 6)
    n = _int(header["n"][1], header["n"][0], "n", src)
    r = _int(header["r"][1], header["r"][0], "r", src)
    if n < 1 or r < 1:
        raise ParseError(f"need n >= 1 and r >= 1, got n={n}, r={r}", None, src)
    c = np.zeros((n, n, r, r), dtype=complex)
    seen = {}
    for lineno, toks in records:
        j, k, lam, mu = (_int(t, lineno, name, src) for t, name in zip(toks[:4], ("j", "k", "lambda", "mu")))
        for name, val, hi in (("j", j, n), ("k", k, n), ("lambda", lam, r), ("mu", mu, r)):
            if not 1 <= val <= hi:
                raise ParseError(f"{name}={val} out of range [1, {hi}]", lineno, src)
        key = (j, k, lam, mu)
        if key in seen:
            raise ParseError(f"duplicate entry ({j},{k},{lam},{mu}), first on line {seen[key]}", lineno, src)
        seen[key] = lineno
        c[j - 1, k - 1, lam - 1, mu - 1] = complex(_float(toks[4], lineno, "re", src), _float(toks[5], lineno, "im", src))
    return validate(CurvatureTensor(n, r, c), tol=tol, symmetrize=symmetrize)


def parse_tensor_file(source, symmetrize=False, tol=1e-12) -> CurvatureTensor:
    """Read a tensor file from a path, an open stream, or literal text."""
    text, src = _read_text(source)
    return parse_tensor_text(text, src, symmetrize, tol)


def _num(x: float) -> str:
    return format(float(x) + 0.0, ".17g")  # + 0.0 drops the sign of -0.0


def emit_tensor(c: CurvatureTensor) -> str:
    out = io.StringIO()
    out.write(f"format {TENSOR_FORMAT}\nversion {VERSION}\nn {c.n}\nr {c.r}\n")
    for idx in zip(*np.nonzero(c.c)):
        v = c.c[idx]
        j, k, lam, mu = (int(i) + 1 for i in idx)
        out.write(f"entry {j} {k} {lam} {mu} {_num(v.real)} {_num(v.imag)}\n")
    return out.getvalue()


def _parse_index_list(tok, n, lineno, name, src) -> MultiIndex:
    if tok == "-":
        return MultiIndex((), n)
    try:
        entries = tuple(int(x) for x in tok.split(","))
    except ValueError:
        raise ParseError(f"{name} must be a comma-separated index list or '-', got {tok!r}", lineno, src) from None
    if list(entries) != sorted(set(entries)):
        raise ParseError(f"{name}={tok} must be strictly increasing", lineno, src)
    try:
        return MultiIndex(entries, n)
    except InputError as exc:
        raise ParseError(f"{name}: {exc}", lineno, src) from None


def parse_form_text(text: str, src="<string>") -> BundleForm:
    header, records = _parse(text, src, FORM_FORMAT, ("n", "r", "p", "q"), "coef", 5, ("fiber",))
    n, r, p, q = (_int(header[k][1], header[k][0], k, src) for k in ("n", "r", "p", "q"))
    if n < 1 or r < 1 or not (0 <= p <= n and 0 <= q <= n):
        raise ParseError(f"invalid dimensions n={n}, r={r}, (p,q)=({p},{q})", None, src)
    fiber = header.get("fiber", (None, "E"))
    if fiber[1] not in ("E", "E*"):
        raise ParseError(f"fiber must be E or E*, got {fiber[1]!r}", fiber[0], src)
    u = BundleForm.zeros(n, r, p, q, dual=fiber[1] == "E*")
    seen = {}
    for lineno, toks in records:
        J = _parse_index_list(toks[0], n, lineno, "J", src)
        K = _parse_index_list(toks[1], n, lineno, "K", src)
        if J.degree != p or K.degree != q:
            raise ParseError(f"slot ({J},{K}) does not have bidegree ({p},{q})", lineno, src)
        lam = _int(toks[2], lineno, "lambda", src)
        if not 1 <= lam <= r:
            raise ParseError(f"lambda={lam} out of range [1, {r}]", lineno, src)
        key = (J, K, lam)
        if key in seen:
            raise ParseError(f"duplicate slot ({J},{K},{lam}), first on line {seen[key]}", lineno, src)
        seen[key] = lineno
        u.coeffs[position(J), position(K), lam - 1] = complex(
            _float(toks[3], lineno, "re", src), _float(toks[4], lineno, "im", src)
        )
    return u


def parse_form_file(source) -> BundleForm:
    text, src = _read_text(source)
    return parse_form_text(text, src)


def emit_form(u: BundleForm) -> str:
    out = io.StringIO()
    out.write(
        f"format {FORM_FORMAT}\nversion {VERSION}\nn {u.n}\nr {u.r}\np {u.p}\nq {u.q}\n"
        f"fiber {'E*' if u.dual else 'E'}\n"
    )
    for (J, K, lam), v in u.items():
        js = ",".join(map(str, J)) or "-"
        ks = ",".join(map(str, K)) or "-"
        out.write(f"coef {js} {ks} {lam} {_num(v.real)} {_num(v.imag)}\n")
    return out.getvalue()
