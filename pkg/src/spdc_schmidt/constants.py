"""Numerical constants of the Gaussian SPDC models.

Two constants are *fit inputs* and are used exactly as quoted in the
literature: the sinc-squared half-maximum abscissa rounded to ``1.39`` (so
the coincidence FWHM coefficient is ``4 * 1.39 = 5.56``) and the long-pulse
Gaussian fit factor ``0.249``.  Every other coefficient is an algebraic
combination of those two and of ``ln 2``/``pi``; it is computed here from its
exact expression.  The rounded value quoted alongside each one is kept in
:data:`ROUNDED` so tests can assert that the expression reproduces it.
"""

from __future__ import annotations

import math

#: Speed of light in vacuum (m/s).
C_LIGHT = 299_792_458.0

LN2 = math.log(2.0)

#: Half-maximum abscissa of sinc^2(x) as used by the width formulas (exact root: 1.3915573...).
SINC2_HALF_X = 1.39
#: Sinc-function coincidence half width, 2 * 1.39.
SINC_COINCIDENCE = 2.0 * SINC2_HALF_X
#: Coefficient of the short-pulse coincidence FWHM, Delta omega^(c) = 5.56 c / (A L).
COINCIDENCE_FWHM_COEFF = 4.0 * SINC2_HALF_X

#: Gaussian factor replacing sinc(u^2) in the long-pulse regime.
GAMMA_LONG = 0.249

#: Short-pulse fit factor of the sum-coordinate exponent of the reduced density matrix.
GAMMA_1 = math.sqrt(LN2)
#: Short-pulse fit factor replacing the difference-coordinate sinc.
GAMMA_2 = LN2 / SINC_COINCIDENCE**2

#: a_short = 3.339 c / (A L)
A_SHORT_COEFF = SINC_COINCIDENCE / math.sqrt(LN2)
#: K_short = 0.5308 A^{3/2} L / sqrt(B lambda0 c tau)
K_SHORT_COEFF = math.sqrt(math.pi * LN2) / SINC_COINCIDENCE
#: K_long = 1.5084 c tau / sqrt(lambda0 L B)
K_LONG_COEFF = math.sqrt(2.0 * math.pi) / (4.0 * math.sqrt(GAMMA_LONG * LN2))
#: R_long = 1.50739 c tau / sqrt(lambda0 L B), obtained independently of any Gaussian fit
R_LONG_COEFF = math.sqrt(SINC2_HALF_X * math.pi) / (2.0 * LN2)
#: K(tau) prefactor multiplying A sqrt(L / (B lambda0))
K_TAU_COEFF = math.sqrt(math.pi * LN2) / (SINC_COINCIDENCE * math.sqrt(2.0 * GAMMA_LONG))
#: omega0 alpha(tau) = 2.17 sqrt(A) B^{1/4} (L/lambda0)^{3/4} eta^{1/4} (1 + eta^s)^{1/(4s)}
ALPHA_TAU_COEFF = math.sqrt(2.0) * math.sqrt(
    math.pi * math.sqrt(LN2) * math.sqrt(2.0 * math.pi * GAMMA_LONG) / SINC2_HALF_X
)
#: alpha_short = 0.299 A L / (c sqrt(K_short))
ALPHA_SHORT_COEFF = math.sqrt(LN2) / SINC_COINCIDENCE
#: Prefactor 0.547 of the short-pulse Schmidt modes
MODE_SHORT_PREFACTOR = LN2**0.25 / math.sqrt(SINC_COINCIDENCE)
#: Sum-coordinate exponent coefficient 0.045 of the short-pulse model wave function
WF_SHORT_SUM_COEFF = GAMMA_2 / 2.0
#: Difference-coordinate exponent coefficient 0.208 of the short-pulse model wave function
WF_SHORT_DIFF_COEFF = GAMMA_1 / 4.0
#: Amplitude coefficient 0.3 of the short-pulse model wave function
WF_SHORT_AMPL_COEFF = math.sqrt(GAMMA_2)
#: a_short / a_long = 1.00267 eta
A_RATIO_COEFF = SINC2_HALF_X / (2.0 * LN2)
#: b_long / b_short = 1.002 sqrt(eta)
B_RATIO_COEFF = 1.0 / math.sqrt(4.0 * GAMMA_LONG)
#: delta nu_n reaches the single-particle width at n = 2.77 K
MODE_WIDTH_CROSSOVER = 4.0 * LN2
#: delta nu_K = 0.6 Delta nu^(s)
MODE_WIDTH_AT_K = 1.0 / (2.0 * math.sqrt(LN2))

#: Default interpolation exponent of the smoothing functions.
S_DEFAULT = 2.21
#: Earlier interpolation variant.
S_EARLIER = 3.0

#: Rounded values as quoted with each formula; asserted against the exact expressions in tests.
ROUNDED = {
    "COINCIDENCE_FWHM_COEFF": (COINCIDENCE_FWHM_COEFF, 5.56),
    "GAMMA_1": (GAMMA_1, 0.832555),
    "GAMMA_2": (GAMMA_2, 0.0897),
    "A_SHORT_COEFF": (A_SHORT_COEFF, 3.339),
    "K_SHORT_COEFF": (K_SHORT_COEFF, 0.5308),
    "K_LONG_COEFF": (K_LONG_COEFF, 1.5084),
    "R_LONG_COEFF": (R_LONG_COEFF, 1.50739),
    "ALPHA_TAU_COEFF": (ALPHA_TAU_COEFF, 2.17),
    "ALPHA_SHORT_COEFF": (ALPHA_SHORT_COEFF, 0.299),
    "MODE_SHORT_PREFACTOR": (MODE_SHORT_PREFACTOR, 0.547),
    "WF_SHORT_SUM_COEFF": (WF_SHORT_SUM_COEFF, 0.045),
    "WF_SHORT_DIFF_COEFF": (WF_SHORT_DIFF_COEFF, 0.208),
    "WF_SHORT_AMPL_COEFF": (WF_SHORT_AMPL_COEFF, 0.3),
    "A_RATIO_COEFF": (A_RATIO_COEFF, 1.00267),
    "B_RATIO_COEFF": (B_RATIO_COEFF, 1.002),
    "MODE_WIDTH_CROSSOVER": (MODE_WIDTH_CROSSOVER, 2.77),
    "MODE_WIDTH_AT_K": (MODE_WIDTH_AT_K, 0.6),
}
