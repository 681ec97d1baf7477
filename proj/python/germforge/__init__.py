"""Numerical invariants and decisions for holomorphic and antiholomorphic
parabolic germs: formal classification, Fatou coordinates, transition
functions and the coefficient-level geometric decisions built on them."""

from germforge._core import (
    GermError,
    TruncatedSeries,
    centralizer,
    chart_eval,
    chart_invert,
    classify,
    compose,
    compute_modulus,
    conjugacy_check,
    conjugate_by,
    decide_embeddable,
    decide_real_curve,
    decide_root,
    flow_map,
    identity,
    invert,
    moduli_equivalent,
    modulus_of_inverse,
    normal_form,
    normal_form_root,
    orbit,
    prenormalize,
    realify,
    residue_iteratif,
    run_cli,
    sigma,
)

__all__ = [
    "GermError",
    "TruncatedSeries",
    "centralizer",
    "chart_eval",
    "chart_invert",
    "classify",
    "compose",
    "compute_modulus",
    "conjugacy_check",
    "conjugate_by",
    "decide_embeddable",
    "decide_real_curve",
    "decide_root",
    "flow_map",
    "identity",
    "invert",
    "moduli_equivalent",
    "modulus_of_inverse",
    "normal_form",
    "normal_form_root",
    "orbit",
    "prenormalize",
    "realify",
    "residue_iteratif",
    "run_cli",
    "sigma",
]

__version__ = "0.1.0"
