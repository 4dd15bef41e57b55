"""Exception hierarchy shared by every module of the package."""


class DocFreqError(Exception):
    """Base class for all errors raised by docfreq."""


class IngestError(DocFreqError):
    """Problems reading the input documents (CLI exit status 1)."""


class EmptyManifest(IngestError):
    pass


class UnreadableFile(IngestError):
    pass


class SentinelByteInInput(IngestError):
    def __init__(self, path, offset):
        super().__init__(f"{path}: reserved byte 0x00/0x01 at offset {offset}")
        self.path = path
        self.offset = offset


class OutOfRange(DocFreqError, IndexError):
    pass


class SelectOverflow(OutOfRange):
    pass


class EmptyRange(DocFreqError, ValueError):
    pass


class EmptyInterval(EmptyRange):
    pass


class EmptyInput(DocFreqError, ValueError):
    pass


class EmptyPattern(DocFreqError, ValueError):
    pass


class InvalidPatternByte(DocFreqError, ValueError):
    pass


class DocMismatch(DocFreqError):
    pass


class ReadShorterThanK(DocFreqError, ValueError):
    pass


class InvalidParameter(DocFreqError, ValueError):
    pass


class FormatError(DocFreqError):
    """Malformed or unsupported index container."""
