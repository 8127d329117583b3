"""Problem configs run in order by verify-all."""
problems = [
    "element/checks.py",
    "patch_test/patch.py",
    "square_plate/udl_clamped.py",
    "square_plate/udl_simply_supported.py",
    "square_plate/nonuniform.py",
    "circular_plate/udl_clamped.py",
]
