// Contrast a transverse and a tangential intersection under refinement.

#include <iostream>

#include "lipaste/geometry.hpp"
#include "lipaste/io.hpp"

int main()
{
    const std::vector<double> hs{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};

    std::cout << "transverse lines\n";
    lipaste::io::write_sweep_csv(std::cout, lipaste::density_sweep({lipaste::FamilyKind::transverse_lines}, hs));

    std::cout << "\nparabola tangent to a line\n";
    lipaste::io::write_sweep_csv(std::cout, lipaste::density_sweep({lipaste::FamilyKind::tangential_parabola}, hs));
}
