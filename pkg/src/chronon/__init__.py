"""Verification laboratory for a relativistic time operator.

Subpackages and modules:

* :mod:`chronon.ncalg` -- exact noncommutative operator algebra and commutator audits
* :mod:`chronon.opalg` -- exact 1-D differential operators and weighted functions
* :mod:`chronon.specfun` -- Ei on the imaginary axis, Gamma for moments
* :mod:`chronon.eigentime` -- time eigenfunctions, figure data, ODE audit
* :mod:`chronon.relspec` -- radial reduction and discretized spectra
* :mod:`chronon.dispersion` -- quadratic dispersion and perturbed Hamiltonian
* :mod:`chronon.energons` -- ladder operators and number states
* :mod:`chronon.cli` -- command line front end
"""

__version__ = "0.1.0"
