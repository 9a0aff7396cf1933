"""IPv6 addresses from Electronic Product Codes."""

from ._core import (
    Epc,
    EpcaddrError,
    OnsRegistry,
    bit_length,
    decode_sgtin96,
    derive,
    encode_sgtin96,
    evaluate,
    format_ipv6,
    generate_population,
    methods,
    parse_ipv6,
    parse_tag_uri,
    plan,
    raw_epc,
    render_tag_uri,
)

__all__ = [
    "Epc",
    "EpcaddrError",
    "OnsRegistry",
    "bit_length",
    "decode_sgtin96",
    "derive",
    "encode_sgtin96",
    "evaluate",
    "format_ipv6",
    "generate_population",
    "methods",
    "parse_ipv6",
    "parse_tag_uri",
    "plan",
    "raw_epc",
    "render_tag_uri",
]
