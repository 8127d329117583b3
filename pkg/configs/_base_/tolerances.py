"""Acceptance tolerances shared by every problem."""
tolerances = dict(
    patch_l2=1e-9,
    patch_h1=1e-9,
    deflection_rel=0.01,  # relative to the exact w_bar
    oracle_rel=1e-3,
    l2_slope=(1.8, 2.3),
    h1_slope=(0.8, 1.3),
    slope_spread=0.3,  # pairwise across thicknesses
    slope_robustness=0.15,  # shift when the coarsest mesh is dropped
    equilibrium=1e-8,
    residual=1e-10,
    strong_residual=1e-8,
    gradient_fd=1e-6,
    boundary=1e-10,
    rank_eig=1e-9,  # relative to the largest eigenvalue
    explicit_shear=1e-10,
    basis_fd=1e-6,
    basis_identity=1e-9,
    quadrature_refinement=1e-8,
    norm_quadrature=1e-8,
)
