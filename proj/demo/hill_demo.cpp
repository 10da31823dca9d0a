// Builds the m = 2 instance d = (1, 1, 1), n = (1, 2, 3), prints the kernel
// matrix and the window products A_i B_j, and runs the full identity suite.

#include <iostream>

#include "toepsyl/toepsyl.hpp"

namespace {

void print(const char* label, const toepsyl::dense_matrix<toepsyl::rational>& x) {
    std::cout << label << " =\n";
    for (std::size_t r = 0; r < x.rows(); ++r) {
        std::cout << "  ";
        for (std::size_t c = 0; c < x.cols(); ++c) {
            std::cout << x(r, c).get_str() << (c + 1 < x.cols() ? "\t" : "\n");
        }
    }
}

} // namespace

int main() {
    using namespace toepsyl;

    const instance<rational> inst({1, 1, 1}, {1, 2, 3});
    const window_calculus<rational> calc(inst);

    print("T", calc.kernel().body());
    print("B_B", calc.b_bottom());
    for (std::size_t i = 1; i <= inst.order() + 1; ++i) {
        for (std::size_t j = i + 1; j <= inst.order() + 1; ++j) {
            const auto lhs = calc.a_window(i) * calc.b_window(j);
            const auto rhs = calc.a_window(j) * calc.b_window(i);
            std::cout << "A_" << i << " B_" << j << (lhs == rhs ? " == " : " != ") << "A_" << j
                      << " B_" << i << '\n';
        }
    }

    const identity_report report = run_all(inst);
    for (const auto& rec : report.checks) {
        std::cout << (rec.pass ? "pass  " : "FAIL  ") << rec.name << "  (" << rec.comparisons
                  << " comparisons over " << rec.range << ")\n";
    }
    return report.passed() ? 0 : 1;
}
