"""Exception hierarchy shared by every stage of the pipeline."""


class FBGError(Exception):
    """Base class for all errors raised by fbgraph."""


class InvalidFasta(FBGError):
    pass


class EmptyInput(InvalidFasta):
    pass


class NonUniformRowLength(FBGError):
    pass


class AllRowsFiltered(FBGError):
    pass


class OutOfBounds(FBGError, IndexError):
    pass


class EmptyInterval(FBGError, ValueError):
    pass


class NoValidSegmentation(FBGError):
    pass


class TooLarge(FBGError, ValueError):
    pass


class SegmentationMismatch(FBGError, ValueError):
    pass


class MalformedGfa(FBGError):
    pass


class MissingBlockTag(MalformedGfa):
    pass


class NotRepeatFree(FBGError):
    pass


class BadMagic(FBGError):
    pass


class VersionMismatch(FBGError):
    pass


class TruncatedStream(FBGError):
    pass
