#pragma once

// The individual displays of the n = 4 argument, written out term by term so
// that each can be checked against its neighbours. Nothing here is used by
// the production closed forms in closedform4; the two must agree, not share
// code.

namespace khav::proofcheck::formulas {

// Integrand of Psi_r for n = 4 in its first display.
double q_integrand(double w, double r, double z);
// Partial-fraction expansion of q_integrand. sign_as_printed = true keeps the
// overall sign of the printed expansion, which equals -q_integrand.
double q_partial_fractions(double w, double r, double z, bool sign_as_printed = false);
// R(w) = 32 r^3 / (1+r)^2 * int Q dw.
double r_antiderivative(double w, double r, double z);
double r_prime_claim(double w, double r, double z);  // 32 r^3 / (1+r)^2 Q(w)
double psi_upper_limit4(double z, double r);

// Psi_r(zt) + Psi_r(-zt) from the paired closed form.
double psi_pair(double t, double r, double z);
// int_0^t (Psi_r(zs) + Psi_r(-zs)) ds.
double psi_pair_antiderivative(double t, double r, double z);

// Integration-by-parts pieces (variable t).
double u_part(double t, double r, double z);
double u_prime(double t, double r, double z);
double u1_part(double t, double r, double z);
double u1_prime(double t, double r, double z);
double vu_combination(double t, double r, double z);  // V U' + V1 U1'
double y_part(double t, double r, double z);
double x_part(double t, double r, double z);                 // -VU' - V1U1' + Y
double x_representation(double t, double r, double z);       // the four-term split / (2(1-r^2) z)
double x_antiderivative(double t, double r, double z);

// Envelope functions and their claimed derivatives (variable z).
double l_envelope(double z, double r);
double l_prime(double z, double r);
double g1(double z, double r);
double g1_prime(double z, double r);
// h2 in the ordering that is positive at z = 0 (the negative of closedform4's h2).
double h2_positive(double z, double r);
// half_printed = true returns the printed derivative divided by two, which
// is the true derivative of h2_positive.
double h2_positive_prime(double z, double r, bool half_printed = true);
double h3(double z, double r);

// Monotonicity of frak_c (variable r).
double frak_c_direct(double r);
double frak_c_prime(double r);
double v_witness(double r);
double v_prime(double r);

// C(0, r) closed formula, evaluated directly.
double c_zero_direct(double r);

}  // namespace khav::proofcheck::formulas
