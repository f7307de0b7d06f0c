"""Lexical URL features.

Thirteen numeric features are computed from the raw URL string alone; no
network access, no page content. The exact rules (tokenizer, subdomain
counting, entropy base) are pinned here so that extraction is a pure,
reproducible function:

* entropy is Shannon entropy in bits (log base 2) over the character
  frequencies of the whole string;
* a "word" is a maximal run of ASCII letters — digits are counted
  separately by num_digits;
* subdomains are counted as dot-separated host labels minus two, with no
  public-suffix list, so "a.co.uk" counts one subdomain by design;
* an absent scheme counts as non-HTTPS;
* num_params counts "&"-separated pairs after "?", not unique keys, and an
  empty query counts zero;
* only the literal "%20" encoding counts as an encoded space.

Bytes that are not valid UTF-8 are expected to have been replaced upstream;
extraction itself never rejects a string except for emptiness.
"""

import ipaddress
import math
import re
from collections import Counter
from dataclasses import dataclass

from .errors import EmptyUrl

FEATURE_NAMES = (
    "url_length",
    "has_subscribe",
    "contains_hash",
    "num_digits",
    "non_https",
    "num_words",
    "entropy",
    "num_params",
    "num_fragments",
    "num_subdomains",
    "num_pct20",
    "num_at",
    "has_ip",
)

NUM_FEATURES = len(FEATURE_NAMES)

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*$")
_WORD_RE = re.compile(r"[A-Za-z]+")
_IPV4_RE = re.compile(r"^(\d{1,3})\.(\d{1,3})\.(\d{1,3})\.(\d{1,3})$")


@dataclass(frozen=True)
class UrlParts:
    """Split of a URL into scheme/host/path/query/fragment.

    Reassembling the parts with their delimiters reproduces the normalized
    (trimmed, scheme-lowercased) input.
    """

    scheme: str | None
    host: str | None
    path: str
    query: str | None
    fragment_text: str | None

    def reassemble(self):
        out = []
        if self.scheme is not None:
            out.append(self.scheme + "://")
        if self.host is not None:
            out.append(self.host)
        out.append(self.path)
        if self.query is not None:
            out.append("?" + self.query)
        if self.fragment_text is not None:
            out.append("#" + self.fragment_text)
        return "".join(out)


@dataclass(frozen=True)
class FeatureVector:
    url_length: int
    has_subscribe: int
    contains_hash: int
    num_digits: int
    non_https: int
    num_words: int
    entropy: float
    num_params: int
    num_fragments: int
    num_subdomains: int
    num_pct20: int
    num_at: int
    has_ip: int

    def as_tuple(self):
        """Values in the canonical FEATURE_NAMES order."""
        return tuple(getattr(self, name) for name in FEATURE_NAMES)


def normalize(text):
    """Strip ASCII whitespace; the result is what every feature sees."""
    trimmed = text.strip(" \t\r\n\f\v")
    if not trimmed:
        raise EmptyUrl()
    return trimmed


def parse_url(raw):
    """Split a URL by the first "://", "?" and "#" delimiters.

    The scheme is recognized only when the prefix before "://" matches
    letter-then-[letters/digits/+/-/.]; otherwise the whole string is
    treated as host+path. The host extends to the first "/", "?" or "#",
    so ports and userinfo stay inside it.
    """
    text = normalize(raw)

    scheme = None
    rest = text
    sep = text.find("://")
    if sep >= 0 and _SCHEME_RE.match(text[:sep]):
        scheme = text[:sep].lower()
        rest = text[sep + 3 :]

    rest, hash_mark, fragment = rest.partition("#")
    fragment_text = fragment if hash_mark else None
    rest, qmark, query_part = rest.partition("?")
    query = query_part if qmark else None

    slash = rest.find("/")
    host_end = slash if slash >= 0 else len(rest)
    host = rest[:host_end] or None
    path = rest[host_end:]
    return UrlParts(scheme=scheme, host=host, path=path, query=query, fragment_text=fragment_text)


def shannon_entropy(text):
    """Entropy in bits of the character distribution; empty string gives 0."""
    n = len(text)
    if n == 0:
        return 0.0
    h = 0.0
    for count in Counter(text).values():
        p = count / n
        h -= p * math.log2(p)
    return h


def count_words(raw):
    """Number of maximal ASCII-letter runs in the whole URL."""
    return len(_WORD_RE.findall(raw))


def is_ip_literal(host):
    if host is None or not host:
        return False
    m = _IPV4_RE.match(host)
    if m:
        return all(int(octet) <= 255 for octet in m.groups())
    if host.startswith("[") and host.endswith("]"):
        try:
            ipaddress.IPv6Address(host[1:-1])
            return True
        except ValueError:
            return False
    return False


def detect_ip(parts):
    """1 when the host is a dotted-quad IPv4 or bracketed IPv6 literal."""
    return 1 if is_ip_literal(parts.host) else 0


def count_subdomains(parts):
    """Dot-separated host labels minus two, floored at zero; IPs count zero."""
    host = parts.host
    if not host or is_ip_literal(host):
        return 0
    return max(0, len(host.split(".")) - 2)


def count_params(parts):
    if parts.query is None or parts.query == "":
        return 0
    return 1 + parts.query.count("&")


def extract_features(raw):
    """Compute all 13 features of a single URL.

    Raises EmptyUrl if the input is blank. Pure and stateless: identical
    input always yields an identical vector.
    """
    text = normalize(raw)
    parts = parse_url(text)
    lowered = text.lower()
    return FeatureVector(
        url_length=len(text),
        has_subscribe=1 if "subscribe" in lowered else 0,
        contains_hash=1 if "#" in text else 0,
        num_digits=sum(c.isdigit() and c.isascii() for c in text),
        non_https=0 if parts.scheme == "https" else 1,
        num_words=count_words(text),
        entropy=shannon_entropy(text),
        num_params=count_params(parts),
        num_fragments=text.count("#"),
        num_subdomains=count_subdomains(parts),
        num_pct20=text.count("%20"),
        num_at=text.count("@"),
        has_ip=detect_ip(parts),
    )
