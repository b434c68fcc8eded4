//! Height lattices, factors, automorphisms and symmetry candidates.
