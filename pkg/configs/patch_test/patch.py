"""Config for the patch test on square meshes."""
_base_ = ["../_base_/material.py", "../_base_/tolerances.py"]

problem = dict(
    type="PatchTestProblem",
    hyper_params=dict(
        meshers=[
            dict(type="StructuredQuadMesher"),
            dict(type="TrapezoidalMesher", skew=0.2),
            dict(type="CVTMesher", lloyd_iters=100),
        ],
        element_series=[16, 64],
        thickness_ratios=[0.1, 0.01, 0.001, 1e-5],
        stiffness_degree=16,
        norm_degree=6,
        num_workers=1,
    ),
)
