"""Config for the hard simply supported square under uniform load."""
_base_ = "udl_clamped.py"

problem = dict(hyper_params=dict(bc="hard_simply_supported"))
