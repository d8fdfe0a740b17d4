"""Exception hierarchy shared by all modules.

Every error that reflects a mathematical obstruction (as opposed to bad
input syntax) derives from ``MathError``; the CLI maps those to exit 3.
"""


class ShomogError(Exception):
    code = "error"


class MathError(ShomogError):
    code = "math_error"


class InputError(ShomogError):
    code = "input_error"


class SizeGuardExceeded(MathError):
    code = "size_guard_exceeded"
