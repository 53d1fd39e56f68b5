#!/usr/bin/env python3
"""Writes corpus/rachota-scenario/{app,program}.json.

The scenario has four events whose handlers touch large groups of fields:
"System settings" writes the 25 settings options, "Add task" writes the 19
task-dialog fields, "OK2" writes the 6 task-list fields and "OK1" writes the 6
preference fields. The read sets are chosen so that the dependency weights
between the events come out as 7, 5, 19, 4, 6, 6, 6, 25, 6, 6, 4, 4.

"Add task" clears the task name, "OK2" copies it into the task list, and
"OK1" persists the task list and exits. On the next launch the stored task
name is dereferenced, which crashes when it was null.

Run from the repository root: python3 tools/corpus/gen_rachota_scenario.py
"""

import json
import pathlib
from collections import OrderedDict

OUT = pathlib.Path(__file__).resolve().parents[2] / "corpus" / "rachota-scenario"

S = [f"SettingsDialog.option{i:02d}" for i in range(1, 26)]
A = ["TaskDialog.name"] + [f"TaskDialog.attr{i:02d}" for i in range(1, 19)]
B = ["TaskList.lastTask", "TaskList.count"] + [f"TaskList.stat{i:02d}" for i in range(1, 5)]
C = [f"Preferences.pref{i:02d}" for i in range(1, 7)]
LAUNCH = ["Rachota.savedCount", "Rachota.savedTask"]


def reads(fields):
    return [{"op": "read", "field": f} for f in fields]


def field_decls():
    out = []
    for f in S:
        out.append({"id": f, "type": "bool", "init": False})
    out.append({"id": A[0], "type": "string", "init": "Untitled"})
    for f in A[1:]:
        out.append({"id": f, "type": "string", "init": ""})
    out.append({"id": B[0], "type": "string", "init": "Idle"})
    out.append({"id": B[1], "type": "string", "init": "1"})
    for f in B[2:]:
        out.append({"id": f, "type": "int", "init": 0})
    for f in C:
        out.append({"id": f, "type": "int", "init": 0})
    for f in LAUNCH:
        out.append({"id": f, "type": "string", "init": None})
    return out


def methods():
    system_settings = (
        reads(A[:5] + B + C)
        + [{"op": "set", "field": f, "value": True} for f in S]
        + [{"op": "open", "window": "SettingsDialog"}]
    )
    add_task = (
        reads(S[:7] + B[:4] + C[:4])
        + [{"op": "setNull", "field": A[0]}]
        + [{"op": "set", "field": f, "value": "new"} for f in A[1:]]
        + [{"op": "open", "window": "TaskDialog"}]
    )
    task_ok = (
        reads(S[:6] + A[1:] + C)
        + [{"op": "copy", "from": A[0], "to": B[0]},
           {"op": "set", "field": B[1], "value": "2"}]
        + [{"op": "set", "field": f, "value": 1} for f in B[2:]]
        + [{"op": "close", "window": "TaskDialog"},
           {"op": "close", "window": "SettingsDialog"}]
    )
    settings_ok = (
        reads(S + A[:4] + B[2:])
        + [{"op": "set", "field": f, "value": 1} for f in C]
        + [{"op": "writeSetting", "key": "tasks", "field": B[0]},
           {"op": "writeSetting", "key": "taskCount", "field": B[1]},
           {"op": "exit"}]
    )
    start = [
        {"op": "readSetting", "key": "taskCount", "field": LAUNCH[0]},
        {"op": "if", "cond": {"isNull": LAUNCH[0]}, "then": [], "else": [
            {"op": "readSetting", "key": "tasks", "field": LAUNCH[1]},
            {"op": "deref", "field": LAUNCH[1]},
        ]},
    ]
    return [
        {"id": "MainWindow.systemSettings", "body": system_settings},
        {"id": "SettingsDialog.addTask", "body": add_task},
        {"id": "SettingsDialog.ok", "body": settings_ok},
        {"id": "TaskDialog.ok", "body": task_ok},
        {"id": "Rachota.start", "body": start},
    ]


HANDLERS = OrderedDict([
    ("System settings", "MainWindow.systemSettings"),
    ("Add task", "SettingsDialog.addTask"),
    ("OK1", "SettingsDialog.ok"),
    ("OK2", "TaskDialog.ok"),
])


def app():
    return OrderedDict([
        ("schemaVersion", 1),
        ("kind", "app"),
        ("name", "rachota-scenario"),
        ("fields", field_decls()),
        ("windows", [
            {"name": "MainWindow", "main": True, "widgets": [
                {"name": "systemSettings", "event": "System settings"},
                {"name": "taskTable"},
            ]},
            {"name": "SettingsDialog", "modal": True, "widgets": [
                {"name": "addTask", "event": "Add task"},
                {"name": "settingsOk", "event": "OK1"},
            ]},
            {"name": "TaskDialog", "modal": True, "widgets": [
                {"name": "taskOk", "event": "OK2"},
            ]},
        ]),
        ("methods", methods()),
        ("handlers", HANDLERS),
        ("settings", ["tasks", "taskCount"]),
        ("onLaunch", "Rachota.start"),
    ])


def literal_sets(body):
    r, w, c = set(), set(), set()
    for s in body:
        op = s["op"]
        if op in ("read", "deref", "log", "writeSetting"):
            r.add(s["field"])
        elif op in ("set", "setNull", "readSetting"):
            w.add(s["field"])
        elif op == "copy":
            r.add(s["from"])
            w.add(s["to"])
        elif op == "call":
            c.add(s["method"])
        elif op in ("if", "throwOob"):
            r.add(next(iter(s["cond"].values())) if "equals" not in s["cond"]
                  else s["cond"]["equals"]["field"])
            for sub in ("then", "else"):
                sr, sw, sc = literal_sets(s.get(sub, []))
                r |= sr
                w |= sw
                c |= sc
    return r, w, c


def program():
    classes = OrderedDict()
    for f in field_decls():
        cls, name = f["id"].rsplit(".", 1)
        classes.setdefault(cls, {"name": cls, "fields": [], "methods": []})["fields"].append(name)
    for m in methods():
        cls, name = m["id"].rsplit(".", 1)
        r, w, c = literal_sets(m["body"])
        entry = classes.setdefault(cls, {"name": cls, "fields": [], "methods": []})
        entry["methods"].append({"name": name, "reads": sorted(r), "writes": sorted(w),
                                 "calls": sorted(c)})
    return OrderedDict([
        ("schemaVersion", 1),
        ("kind", "program"),
        ("classes", list(classes.values())),
        ("bindings", dict(sorted(HANDLERS.items()))),
    ])


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "app.json").write_text(json.dumps(app(), indent=2) + "\n")
    (OUT / "program.json").write_text(json.dumps(program(), indent=2) + "\n")


if __name__ == "__main__":
    main()
