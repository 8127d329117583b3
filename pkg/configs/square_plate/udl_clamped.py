"""Config for the clamped square under uniform load."""
_base_ = ["../_base_/material.py", "../_base_/tolerances.py"]

problem = dict(
    type="SquareUDLProblem",
    hyper_params=dict(
        bc="clamped",
        thin_ratio=1e-5,
        node_targets=[104, 204, 404, 602, 803],
        thickness_ratios=[1e-5, 0.001, 0.01, 0.1, 0.15, 0.2],
        checked_ratios=[1e-5, 0.1],  # compared with the exact table on the finest mesh
        center=[0.5, 0.5],
        stiffness_degree=16,
        num_workers=1,
    ),
    mesher_cfg=dict(type="CVTMesher", domain="unit_square", size=1.0, lloyd_iters=100),
)
