// Scan a*x^2 + b*y^2 = n over a range of n and tally the verdicts.
// Usage: scan_demo [a b lo hi], default 2 7 1 200.

#include "qrep/decision.hpp"

#include <cstdlib>
#include <iostream>
#include <map>

using namespace qrep;

int main(int argc, char** argv) {
    Int a = 2, b = 7, lo = 1, hi = 200;
    if (argc == 5) {
        a = Int(argv[1]);
        b = Int(argv[2]);
        lo = Int(argv[3]);
        hi = Int(argv[4]);
    } else if (argc != 1) {
        std::cerr << "usage: " << argv[0] << " [a b lo hi]\n";
        return 1;
    }

    std::map<Verdict, int> tally;
    std::vector<Int> blocked; // locals pass, representation does not exist
    Method method = Method::oracle;
    for (Int n = lo; n <= hi; ++n) {
        DecisionReport r = decide(a, b, n);
        method = r.method;
        ++tally[r.verdict];
        if (r.verdict == Verdict::ArtinObstructed) blocked.push_back(n);
        if (r.verdict == Verdict::Solvable)
            std::cout << n.str() << " = " << a.str() << "*" << r.witness->first.str() << "^2 + "
                      << b.str() << "*" << r.witness->second.str() << "^2\n";
    }

    std::cout << "\nform " << a.str() << "*x^2 + " << b.str() << "*y^2, n = " << lo.str()
              << ".." << hi.str() << " (" << to_string(method) << ")\n";
    for (auto& [v, count] : tally)
        std::cout << "  " << to_string(v) << ": " << count << "\n";
    if (!blocked.empty()) {
        std::cout << "locally fine yet unrepresented:";
        for (const Int& n : blocked) std::cout << " " << n.str();
        std::cout << "\n";
    }
    return 0;
}
