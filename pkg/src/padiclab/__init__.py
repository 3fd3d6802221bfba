"""padiclab: exact verification of p-adic limits of modular forms and formal-group invariants.

Modules:

* ``exactnum``: p-adic valuations, residues and relative-precision approximations.
* ``qseries``: exact truncated q-series, Hecke-type operators, composition, reversion.
* ``modforms``: eta quotients, Eisenstein series, eigenforms and the level-32 cast.
* ``weierstrass``: curve models, Laurent expansions of the Weierstrass functions.
* ``fgl``: formal logarithms, Honda integrality and the Dieudonne coefficients.
* ``gammap``: Morita's p-adic Gamma function and Catalan approximants.
* ``ulimits``: limits of U-iterates and the constants beta, gamma.
* ``eisenmod``: Eisenstein series in Q, R and the supersingular congruences.
* ``cli``: the ``padiclab`` command.
"""

__version__ = "0.1.0"
