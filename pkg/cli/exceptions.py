from arith.exceptions import ParseError


class EmptySystem(ParseError):
    """The polys: section holds no polynomial."""


class MissingSection(ParseError):
    """A required params:, vars: or polys: section is absent."""
