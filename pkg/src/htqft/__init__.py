"""Exact path-integral HTQFTs of Hopf-algebra-valued Brown functors."""
