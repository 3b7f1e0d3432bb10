"""Pass/fail reports with first-failure witnesses."""

import json


class Check:
    __slots__ = ("name", "passed", "witness", "detail")

    def __init__(self, name, passed, witness=None, detail=None):
        self.name = name
        self.passed = bool(passed)
        self.witness = witness
        self.detail = detail

    def to_dict(self):
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


class Report:
    """Ordered collection of named checks plus free-form data and notes."""

    def __init__(self, title):
        self.title = title
        self.checks = []
        self.data = {}
        self.notes = []

    def add(self, name, passed, witness=None, detail=None):
        self.checks.append(Check(name, passed, witness, detail))
        return bool(passed)

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.detail))
        self.notes.extend(other.notes)
        return other.passed

    def note(self, text):
        self.notes.append(text)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        out = {"title": self.title, "passed": self.passed,
               "checks": [c.to_dict() for c in self.checks]}
        if self.data:
            out["data"] = self.data
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_markdown(self):
        lines = [f"### {self.title}", "", "| check | result | witness |", "|---|---|---|"]
        for c in self.checks:
            w = "" if c.witness is None else str(c.witness)
            lines.append(f"| {c.name} | {'pass' if c.passed else 'FAIL'} | {w} |")
        for key in sorted(self.data):
            lines.append("")
            lines.append(f"- {key}: {self.data[key]}")
        for n in self.notes:
            lines.append(f"- note: {n}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        status = "pass" if self.passed else "FAIL"
        return f"<Report {self.title!r} {status} ({len(self.checks)} checks)>"
