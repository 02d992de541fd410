"""Text, JSON, CSV and SVG renderings of disclosure and sweep results.

Text output uses two decimals; JSON and CSV keep full precision.
"""

from __future__ import annotations

import csv
import io
import json

import pandas as pd

from .ingest import format_number
from .pipeline import DisclosureReport, SweepResult

SCHEMA_VERSION = 1

ATTRIB_COLUMNS = ["Dorig", "Dsyn", "iS", "DiS", "DiSCO", "DCAPorig", "DiSDiO", "max_denom", "mean_denom"]
CAP_COLUMNS = ["baseCAPd", "CAPd", "CAPs", "DCAP_d", "DCAP_s", "DCAP_b", "TCAP_d", "TCAP_s", "TCAP_b", "TCAP"]


def _fmt(x) -> str:
    return f"{x:.2f}" if isinstance(x, float) else str(x)


def _table(rows: list[list], columns: list[str], index: list[str]) -> str:
    df = pd.DataFrame([[_fmt(v) for v in r] for r in rows], columns=columns, index=index)
    return df.to_string()


def _attrib_row(a) -> list:
    return [a.Dorig, a.Dsyn, a.iS, a.DiS, a.DiSCO, a.DCAP_d, a.DiSDiO, a.max_denom, a.mean_denom]


def _cap_row(c, a) -> list:
    return [c.baseCAPd, c.CAPd, c.CAPs, c.DCAP_d, c.DCAP_s, c.DCAP_b, a.DiSCO, c.TCAP_s, c.TCAP_b, c.TCAP]


def render_text(report: DisclosureReport) -> str:
    keys = " ".join(report.keys)
    idx = [str(i + 1) for i in range(report.m)]
    out = [f"Disclosure risk for {report.n_orig} records in the original data", ""]
    parts = report.to_print

    if "ident" in parts:
        uio = sum(i.UiO for i in report.ident) / report.m
        rep = sum(i.repU for i in report.ident) / report.m
        out += ["Identity disclosure measures", f"from keys: {keys} ",
                f"For original  ( UiO )  {uio:.2f} %", f"For synthetic ( repU ) {rep:.2f} ", ""]
        out += [f"Identity disclosure measures for {report.m} synthetic data set(s) from keys:",
                f" {keys} ", ""]
        out.append(_table([[i.UiO, i.UiS, i.UiOiS, i.repU] for i in report.ident],
                          ["UiO", "UiS", "UiOiS", "repU"], idx))
        out.append("")

    if report.kind == "multi" and report.targets:
        out += [f"Table of attribute disclosure measures for {keys} ",
                "Original measure is  Dorig and synthetic measure is DiSCO ",
                "Variables Ordered by synthetic disclosure measure", ""]
        rows = [[r.attrib_orig, r.attrib_syn, r.check1, r.npairs, r.check2] for r in report.summary]
        out.append(_table(rows, ["attrib.orig", "attrib.syn", "check1", "Npairs", "check2"],
                          [f"{i + 1} {r.label}" for i, r in enumerate(report.summary)]))
        out.append("")

    for t in report.targets:
        if "attrib" in parts:
            out.append(f"Attribute disclosure measures for {t.target} from keys: {keys} ")
            out.append(_table([_attrib_row(a) for a in t.attrib], ATTRIB_COLUMNS, idx))
            out.append("")
            if t.generalized is not None:
                out.append(f"Disclosure with attribution probability at least tau = {report.tau:g}")
                out.append(_table([[g] for g in t.generalized], ["Dtau"], idx))
                out.append("")
        if "allCAPs" in parts:
            out.append(f"CAP measures for {t.target} from keys: {keys} ")
            out.append(_table([_cap_row(c, a) for c, a in zip(t.caps, t.attrib)], CAP_COLUMNS, idx))
            undefined = sorted({u for c in t.caps for u in c.undefined})
            if undefined:
                out.append(f"Undefined (zero denominator, shown as 0): {' '.join(undefined)}")
            out.append("")
        if "check_1way" in parts:
            rows, index = [], []
            for i, c in enumerate(t.checks):
                for c1 in c.check_1way:
                    index.append(f"{i + 1} {c1.level}")
                    rows.append([c1.level, c1.All, c1.PctLevelAll, c1.totalDisclosive,
                                 c1.nLevelDis, c1.PctLevelDis])
            if rows:
                out.append("Details of target level contributing disproportionately to disclosure")
                out.append(_table(rows, ["Level", "All", "PctLevelAll", "totalDisclosive",
                                         "nLevelDis", "PctLevelDis"], index))
            else:
                out.append(f"No target level of {t.target} contributes disproportionately to disclosure")
            out.append("")
        if "check_2way" in parts:
            rows, index = [], []
            for i, c in enumerate(t.checks):
                for c2 in c.check_2way:
                    index.append(str(i + 1))
                    rows.append([c2.target_key_levs, c2.npairs, c2.key, c2.key_target_total,
                                 c2.key_total, c2.PctTargetKeyLevel])
            if rows:
                out.append("Details of target-key combinations contributing disproportionately "
                           f"to disclosure of {t.target}")
                out.append(_table(rows, ["target_key_levs", "npairs", "key", "key_target_total",
                                         "key_total", "PctTargetKeyLevel"], index))
            else:
                out.append(f"No target-key pairs of {t.target} need checks")
            out.append("")
    return "\n".join(out).rstrip("\n") + "\n"


def report_dict(report: DisclosureReport) -> dict:
    ex = report.exclusions
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": report.kind,
        "keys": report.keys,
        "n_orig": report.n_orig,
        "n_syn": report.n_syn,
        "m": report.m,
        "settings": {
            "thresh_1way": list(report.thresholds.thresh_1way),
            "thresh_2way": list(report.thresholds.thresh_2way),
            "exclusions": {
                "not_target": list(ex.not_target),
                "use_keys_na": ex.use_keys_na,
                "use_target_na": ex.use_target_na,
                "excluded_pairs": [list(p) for p in ex.excluded_pairs],
                "denom_lim": ex.denom_lim,
                "exclude_ov_denom_lim": ex.exclude_ov_denom_lim,
            },
            "tau": report.tau,
        },
        "binnings": {name: {"breaks": list(b.breaks), "labels": list(b.labels),
                            "code_labels": list(b.code_labels), "missing_label": b.missing_label}
                     for name, b in report.binnings.items()},
        "ident": [i.as_dict() for i in report.ident],
        "q_registries": report.q_registries,
        "targets": [
            {
                "target": t.target,
                "t_registries": t.t_registries,
                "replicates": [
                    {
                        "attrib": a.as_dict(),
                        "allCAPs": c.as_dict(),
                        "checks": k.as_dict(),
                        **({"generalized": t.generalized[i]} if t.generalized is not None else {}),
                    }
                    for i, (a, c, k) in enumerate(zip(t.attrib, t.caps, t.checks))
                ],
            }
            for t in report.targets
        ],
        "summary": [
            {"target": r.variable, "label": r.label, "attrib.orig": r.attrib_orig,
             "attrib.syn": r.attrib_syn, "check1": r.check1, "check2": r.check2, "Npairs": r.npairs}
            for r in report.summary
        ],
    }


def render_json(report: DisclosureReport) -> str:
    return json.dumps(report_dict(report), indent=2) + "\n"


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _num(x) -> str:
    return repr(float(x)) if isinstance(x, float) else str(x)


def render_csv(report: DisclosureReport) -> str:
    """One row per (replicate, target, measure); identity rows have an empty target."""
    rows = []
    for i, ident in enumerate(report.ident, start=1):
        for m, v in ident.as_dict().items():
            rows.append([i, "", m, _num(v)])
    for t in report.targets:
        for i, (a, c) in enumerate(zip(t.attrib, t.caps), start=1):
            for m, v in a.as_dict().items():
                rows.append([i, t.target, m, _num(v)])
            for m in c.MEASURES:
                if m != "DCAP_d":
                    rows.append([i, t.target, m, _num(getattr(c, m))])
            rows.append([i, t.target, "N_b", c.N_b])
            rows.append([i, t.target, "N_bp", c.N_bp])
            if t.generalized is not None:
                rows.append([i, t.target, "Dtau", _num(t.generalized[i - 1])])
    return _csv(rows, ["replicate", "target", "measure", "value"])


def render_sweep_text(result: SweepResult) -> str:
    out = [f"Disclosure measures by synthetic data size for {result.n_orig} original records",
           f"keys: {' '.join(result.keys)}; {result.m} replicate(s) of {result.n_syn} records", ""]
    for t in dict.fromkeys(r["target"] for r in result.rows):
        rows = [r for r in result.rows if r["target"] == t]
        out.append(f"Target {t}")
        out.append(_table([[r["n_syn"]] + [r[m] for m in result.measures] for r in rows],
                          ["n_syn", *result.measures], [format_number(r["fraction"]) for r in rows]))
        out.append("")
    return "\n".join(out).rstrip("\n") + "\n"


def render_sweep_csv(result: SweepResult) -> str:
    header = ["target", "fraction", "n_syn", *result.measures]
    return _csv([[r["target"], _num(r["fraction"]), _num(r["n_syn"])] + [_num(r[m]) for m in result.measures]
                 for r in result.rows], header)


def render_sweep_json(result: SweepResult) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, "kind": "sweep", "keys": result.keys,
                       "n_orig": result.n_orig, "n_syn": result.n_syn, "m": result.m,
                       "fractions": result.fractions, "measures": list(result.measures),
                       "rows": result.rows}, indent=2) + "\n"


def render(report: DisclosureReport | SweepResult, fmt: str = "text") -> bytes:
    from .plotting import figure_bytes, plot_summary, plot_sweep

    if isinstance(report, SweepResult):
        if fmt == "svg":
            return figure_bytes(plot_sweep(report))
        fn = {"text": render_sweep_text, "json": render_sweep_json, "csv": render_sweep_csv}[fmt]
        return fn(report).encode("utf-8")
    if fmt == "svg":
        return figure_bytes(plot_summary(report))
    fn = {"text": render_text, "json": render_json, "csv": render_csv}[fmt]
    return fn(report).encode("utf-8")
