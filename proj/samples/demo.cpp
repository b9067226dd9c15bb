// Walks through the kappa-Minkowski plane [X1, X2] = i X2 with its bicovariant calculus.

#include <iostream>

#include "ncdc/expression.hpp"
#include "ncdc/realization.hpp"

int main()
{
	using namespace ncdc;
	const SuperStructure s = build_kappa(2, KappaFamily::S1, 0, {0, 1});
	const int D = 3;

	std::cout << "structure violations: " << validate_structure(s).violations.size() << "\n\n";

	const Realization r = shift_realization(s, D);
	for (const auto &[label, image] : r.labelled())
		std::cout << label << " -> " << image.to_string() << "\n";

	const DerivativeOperator d = exterior_derivative(s, D);
	std::cout << "\nd -> " << d.d_hat.to_string() << "\n";
	std::cout << "[d, X2] -> " << super_commutator(d.d_hat, r.x[1]).to_string() << "\n";

	auto rep = verify_realization(r, s);
	rep.append(check_d_properties(d, weyl_linear_realization(s, D), 5, 1));
	std::cout << "bracket and calculus violations: " << rep.violations.size() << "\n\n";

	Enveloping env(s);
	const PBWElement X = expression_to_pbw(env, "X1 X2^2");
	const auto images = env.move_right(2, X);
	std::cout << "theta1 (X1 X2^2) = sum_B (T_{1B} > X1 X2^2) Z_B with\n";
	for (int B = 0; B < env.size(); ++B)
		std::cout << "  B=" << B + 1 << ": " << format_pbw(images[B]) << "\n";
	return 0;
}
