"""Type tags of the script language."""

NUMBER = "Number"
BOOL = "Bool"
STRING = "String"
MODEL = "Model"
VNUM = "Valuation(Number)"
VBOOL = "Valuation(Bool)"

ALL = (NUMBER, BOOL, STRING, MODEL, VNUM, VBOOL)


def is_valuation(t: str) -> bool:
    return t in (VNUM, VBOOL)
