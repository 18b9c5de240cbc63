#include "stratsig/witt.hpp"

namespace stratsig {

std::unique_ptr<LinkContext> make_link_context(const Stratification& strat, SimplexId carrier)
{
    auto lc = std::make_unique<LinkContext>();
    lc->link = intrinsic_link(strat, carrier);
    lc->pl = prime_level_of(lc->link.complex, lc->link.strat);
    int ldim = lc->link.complex.dim();
    auto mp = Perversity::lower_middle(std::max(ldim, 2));
    auto np = Perversity::upper_middle(std::max(ldim, 2));
    lc->wm = w_complex(lc->pl, mp);
    lc->wn = w_complex(lc->pl, np);
    lc->h_m = homology(lc->wm.gc);
    lc->middle = ldim / 2;
    return lc;
}

WittReport witt_check(const Stratification& strat)
{
    WittReport rep;
    int n = strat.n();
    for (int codim : strat.stratum_codims()) {
        if (codim % 2 == 0)
            continue; // Witt condition constrains odd codimension only
        WittStratumVerdict sv;
        sv.codim = codim;
        sv.stratum_dim = n - codim;
        int l = (codim - 1) / 2;
        for (const auto& comp : strat.components(n - codim)) {
            auto lc = make_link_context(strat, comp.rep);
            WittComponentVerdict cv;
            cv.rep = comp.rep;
            cv.link_ih_m = lc->h_m.ranks;
            cv.middle_rank = lc->h_m.rank(l);
            cv.witt = (cv.middle_rank == 0);
            sv.components.push_back(std::move(cv));
        }
        rep.strata.push_back(std::move(sv));
    }
    return rep;
}

} // namespace stratsig
