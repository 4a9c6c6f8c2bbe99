"""Named transition specs and the embedded demo dataset."""
from __future__ import annotations

from .errors import DomainError
from .graph import TransitionSpec
from .sampler import BitSequence

# m = 2 specs with q ordered by word index 00, 01, 10, 11
PRESETS: dict[str, tuple[int, tuple[float, ...]]] = {
    "dbp1": (2, (0.9, 0.1, 0.9, 0.1)),
    "dbp2": (2, (0.5, 0.5, 0.5, 0.5)),
    "dbp3": (2, (0.25, 0.75, 0.25, 0.75)),
    "dbp4": (2, (0.1, 0.9, 0.1, 0.9)),
    "teinf2": (2, (0.9, 0.25, 0.75, 0.1)),
    "teinf3": (3, (0.1, 0.7, 0.5, 0.8, 0.2, 0.5, 0.3, 0.9)),
}


def preset(name: str) -> TransitionSpec:
    try:
        m, q = PRESETS[name.lower()]
    except KeyError:
        raise DomainError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return TransitionSpec(m, q)


# Oxford-Cambridge boat race winners, 1 = Cambridge, 0 = Oxford, one entry per
# year (the dead heat and the second race of a double year are left out).
# Reconstructed from public summaries; demo data only, not authoritative.
_BOAT_RACE = {
    1829: 0, 1836: 1, 1839: 1, 1840: 1, 1841: 1, 1842: 0, 1845: 1, 1846: 1, 1849: 1,
    1852: 0, 1854: 0, 1856: 1, 1857: 0, 1858: 1, 1859: 0, 1860: 1,
    **{y: 0 for y in range(1861, 1870)},
    **{y: 1 for y in range(1870, 1875)},
    1875: 0, 1876: 1, 1878: 0, 1879: 1, 1880: 0, 1881: 0, 1882: 0, 1883: 0, 1884: 1,
    1885: 0, 1886: 1, 1887: 1, 1888: 1, 1889: 1,
    **{y: 0 for y in range(1890, 1899)},
    1899: 1, 1900: 1, 1901: 0, 1902: 1, 1903: 1, 1904: 1, 1905: 0, 1906: 1, 1907: 1,
    1908: 1, 1909: 0, 1910: 0, 1911: 0, 1912: 0, 1913: 0, 1914: 1,
    1920: 1, 1921: 1, 1922: 1, 1923: 0,
    **{y: 1 for y in range(1924, 1937)},
    1937: 0, 1938: 0, 1939: 1,
    1946: 0, 1947: 1, 1948: 1, 1949: 1, 1950: 1, 1951: 1, 1952: 0, 1953: 1, 1954: 0,
    1955: 1, 1956: 1, 1957: 1, 1958: 1, 1959: 0, 1960: 0, 1961: 1, 1962: 1, 1963: 0,
    1964: 1, 1965: 0, 1966: 0, 1967: 0,
    **{y: 1 for y in range(1968, 1974)},
    1974: 0, 1975: 1,
    **{y: 0 for y in range(1976, 1986)},
    1986: 1,
    **{y: 0 for y in range(1987, 1993)},
    **{y: 1 for y in range(1993, 2000)},
    2000: 0, 2001: 1, 2002: 0, 2003: 0, 2004: 1, 2005: 0, 2006: 0, 2007: 1, 2008: 0,
    2009: 0, 2010: 0, 2011: 0, 2012: 1, 2013: 0, 2014: 0, 2015: 0, 2016: 1, 2017: 0,
    2018: 1, 2019: 1, 2021: 1,
}


def boat_race() -> BitSequence:
    """Approximate yearly boat-race winners (1 = Cambridge) as a demo sequence."""
    years = sorted(_BOAT_RACE)
    return BitSequence([_BOAT_RACE[y] for y in years], timestamps=years, label="boat-race (approximate)")
