#ifndef PERSPCONE_LAMBERT_HPP
#define PERSPCONE_LAMBERT_HPP

namespace perspcone {

// Principal branch of the Lambert W function: the inverse of w -> w*exp(w)
// on [-1, +inf[. Arguments in [-1/e - 1e-12, -1/e] are clamped to the branch
// point; anything below that throws std::domain_error.
//
// The residual |w*exp(w) - z| is driven below ~1e-15 * max(1, |z|).
double lambert_w(double z);

// W(exp(s)) without forming exp(s), i.e. the solution of w + log(w) = s.
// Needed when s is far beyond the overflow point of exp. For small s it
// falls back to lambert_w(exp(s)).
double lambert_w_of_exp(double s);

// W(scale * exp(x)) for scale > 0, computed in the log domain whenever the
// product would overflow.
double lambert_w_scaled_exp(double scale, double x);

} // namespace perspcone

#endif
