"""Config for the convergence study of the clamped disk under uniform load."""
_base_ = ["../_base_/material.py", "../_base_/tolerances.py"]

problem = dict(
    type="CircularPlateProblem",
    hyper_params=dict(
        element_series=[64, 256, 1024, 4096],
        thickness_ratios=[0.2, 0.1, 0.01, 1e-5],
        stiffness_degree=16,
        norm_degree=6,
        record_timing=False,
        num_workers=1,
    ),
    mesher_cfg=dict(type="CVTMesher", domain="disk", size=1.0, lloyd_iters=100),
)
