"""Config for the element checks on random convex polygons."""
_base_ = ["../_base_/material.py", "../_base_/tolerances.py"]

problem = dict(
    type="ElementChecksProblem",
    hyper_params=dict(
        rank_polygons=100,
        rank_sides=(3, 8),
        rank_ratios=[0.2, 0.01, 1e-5],  # h / diameter
        closed_form_polygons=20,  # per side count
        closed_form_points=10,
        closed_form_ratio=0.1,
        basis_polygons=50,
        basis_sides=(3, 10),
        basis_points=10,
        quadrature_polygons=20,
        stiffness_degree=16,
        stiffness_refinement_tol=1e-10,  # None keeps the fixed rule of stiffness_degree
    ),
)
