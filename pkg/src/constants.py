"""
Centralized constants for conckit.
Contains the pre-registered pattern generators, label vocabularies for forms and certificates,
and the standard texts recorded in reports.
"""

# Dualizable generators shipped with the calculus (name -> declared dual, as pattern text).
# Configuration may add more under patterns.generators.
DEFAULT_GENERATORS = {
    'J': 'twist(-4, J)',
}

# The generator whose twisted family is studied by the pipeline
FAMILY_GENERATOR = 'J'

# Twist applied to J by dualizing: J* = twist(J_DUAL_TWIST, J)
J_DUAL_TWIST = -4

# Definiteness labels
NEGATIVE_DEFINITE = 'negative-definite'
POSITIVE_DEFINITE = 'positive-definite'
INDEFINITE = 'indefinite'
DEGENERATE = 'degenerate'

# d-bound certificate kinds and the relation each one asserts between d(Y1) and the bound
BOUND_KINDS = {
    'negdef': '>=',
    'posdef': '<=',
    'rational-homology-cobordism': '=',
}

# Directions for the monotonicity chain
UP = 'up'
DOWN = 'down'

# Verdicts
NOT_CONCORDANT = 'not smoothly concordant'
INCONCLUSIVE = 'inconclusive'
INDISTINGUISHABLE = 'indistinguishable by implemented invariants'
NOT_SLICE = 'not slice'

# Facts taken as axioms (certificate leaves)
AXIOMS = {
    'negdef': 'negative-definite cobordism W from Y0 to Y1: d(Y1) >= d(Y0) + (c1(s)^2 + b2(W))/4',
    'posdef': 'positive-definite cobordism W from Y0 to Y1: d(Y1) <= d(Y0) + (c1(s)^2 - b2(W))/4',
    'rational-homology-cobordism': 'rational homology cobordism from Y0 to Y1: d(Y1) = d(Y0)',
    'homology-ball': 'an integer homology sphere bounding an integer homology ball has d = 0',
    'alternating-one-surgery': 'alternating K: d(S^3_1(K)) = 2 min{0, -ceil(-sigma(K)/4)}',
}

# Claims recorded but not recomputed
ASSUMPTIONS = {
    'y0': 'Sigma_2((tau_-1 J)(U)) is +1 surgery on the alternating knot 5_2',
    'y1': 'Sigma_2((tau_1 J)(U)) bounds a contractible 4-manifold built from one 0-, one 1- and one 2-handle',
    'traces': 'P(U) and (tau_n P*)(U) have diffeomorphic n-traces for dualizable P',
    'reversal': 'the d-invariant of the branched double cover does not see the knot orientation, '
                'so the verdict holds up to reversal',
    'slice-cover': 'Sigma_2 of a slice knot bounds a rational homology ball, hence has d = 0',
    'slice-trace': 'K is slice iff its 0-trace embeds in S^4; 0-trace partners are slice together',
    'slice-determinant': 'the determinant of a slice knot is a perfect square',
    'four-genus': 'each (tau_n J)(U) has smooth 4-genus 1 (band-move construction, not recomputed)',
    'general-monotonicity': [
        'Sigma_n(L) is an integer homology sphere',
        'eta bounds a disc meeting L algebraically once (linking number +-1)',
        'the auxiliary gamma curves have zero linking with eta and with each other',
    ],
}

# Fixture file schema version understood by the loader
FIXTURE_VERSION = 1
