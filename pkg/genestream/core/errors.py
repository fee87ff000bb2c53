class GenestreamError(ValueError):
    """Base class for every domain error raised by genestream"""


class InvalidSymbol(GenestreamError):
    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"invalid nucleotide {char!r} at position {position}")


class KTooLarge(GenestreamError):
    def __init__(self, k: int, limit: int = 31):
        self.k = k
        self.limit = limit
        super().__init__(f"k={k} exceeds the packing limit of {limit}")


class ReadTooShort(GenestreamError):
    def __init__(self, length: int, k: int):
        self.length = length
        self.k = k
        super().__init__(f"read of length {length} is shorter than k={k}")


class EmptyPattern(GenestreamError):
    def __init__(self):
        super().__init__("pattern must contain at least one base")


class Unsatisfiable(GenestreamError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"simulation spec cannot be satisfied: {reason}")


class TooManySegments(GenestreamError):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"{count} segments exceed the exact-solver limit of {limit}")


class FastaFormatError(GenestreamError):
    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}")
