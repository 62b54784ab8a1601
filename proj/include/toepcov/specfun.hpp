#pragma once

namespace toepcov {

// Log-gamma for x > 0.  Throws std::domain_error otherwise.
double ln_gamma(double x);

// ln|Gamma(x)| for any x that is not a pole; sign receives sgn(Gamma(x)).
// Negative non-integer arguments go through the reflection formula.
double lgamma_signed(double x, int& sign);

// Gauss hypergeometric 2F1(a,b;c;z), z < 1.  Direct series on [0,1),
// a Pfaff transform on moderate negative z, and the connection formula
// at -infinity for large |z| (requires b-a non-integer there unless the
// series terminates).
double gauss_2f1(double a, double b, double c, double z);

// Generalized hypergeometric 3F2(a1,a2,a3;b1,b2;z), z < 1.  Direct series
// for |z| < 3/4, otherwise an Euler-type integral over 2F1 (needs some
// upper/lower pair with b > a > 0).
double hyp_3f2(double a1, double a2, double a3, double b1, double b2,
               double z);

// Regularized lower incomplete gamma P(m,x), m > 0, x >= 0.
double reg_lower_inc_gamma(double m, double x);

}
