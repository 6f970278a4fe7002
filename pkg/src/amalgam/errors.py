"""Exception hierarchy shared by every module.

Each class carries a ``code`` that the command line reports verbatim in its
error JSON.
"""


class AmalgamError(Exception):
    code = "AmalgamError"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class DivisibilityError(AmalgamError):
    code = "DivisibilityError"


class RangeError(AmalgamError):
    code = "RangeError"


class WordSyntaxError(AmalgamError):
    """Malformed word text; ``offset`` is the byte offset of the bad character."""

    code = "SyntaxError"

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset

    def to_json(self):
        out = super().to_json()
        out["offset"] = self.offset
        return out


class ParamMismatch(AmalgamError):
    code = "ParamMismatch"


class RelationViolation(AmalgamError):
    code = "RelationViolation"

    def __init__(self, relation, message=None):
        super().__init__(message or f"relation {relation} does not hold")
        self.relation = relation

    def to_json(self):
        out = super().to_json()
        out["relation"] = self.relation
        return out


class MalformedPermutation(AmalgamError):
    code = "MalformedPermutation"


class IdentityFailure(AmalgamError):
    """A constructed element failed the factorization it was built to satisfy."""

    code = "IdentityFailure"
