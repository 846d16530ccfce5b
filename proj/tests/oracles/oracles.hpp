#pragma once

// Generated by tests/oracles/gen_oracles.py (mpmath, 60 digits).

namespace twistzero::oracle {

struct CplxPair {
  double in_re, in_im, re, im;
};

struct TailCase {
  double w_re, w_im, z_re, z_im, re, im;
};

struct RealCase {
  double s_re, s_im, x, re, im;
};

inline constexpr CplxPair kGamma[] = {
    {0.5, 0.0, 1.772453850905516, 0.0},
    {1.0, 0.0, 1.0, 0.0},
    {5.5, 0.0, 52.34277778455352, 0.0},
    {-2.5, 0.0, -0.9453087204829419, 0.0},
    {0.25, 3.0, 0.01705032393424412, -0.0015968774203813359},
    {6.0, 10.0, 0.02999470837455681, 0.15096471040493395},
    {-3.7, 0.2, 0.19375972161156169, -0.01883666273346816},
    {1.5, 40.0, -3.447379525488221e-26, 3.855508260781656e-26},
    {0.5, -7.0, 3.958497415708819e-05, -1.4187559453122251e-05},
};

inline constexpr CplxPair kLogGammaReal[] = {
    {6.0, 100.0, -130.8295105674371, 0.0},
    {6.0, 400.0, -594.4463653102198, 0.0},
    {0.5, 1000.0, -1569.877388261692, 0.0},
    {30.0, 5.0, 70.83535539029765, 0.0},
    {6.5, -250.0, -358.65080575556004, 0.0},
};

inline constexpr TailCase kTail[] = {
    {3.0, 0.0, 0.5, 0.0, 15.769797152528469, 0.0},
    {3.0, 0.0, 10.0, 0.0, 5.538791431023152e-06, 0.0},
    {6.0, 2.0, 1.2566, 0.0, -21.19656391304483, 3.0873406625762514},
    {6.0, 2.0, 30.0, 0.0, 3.695276354375172e-15, 2.810041116413784e-16},
    {6.0, 40.0, 1.2566, 0.0, -0.0008341151451673027, 0.007021907126299786},
    {6.0, 40.0, 60.0, 0.0, 1.0523768309928263e-28, 7.591367870151337e-29},
    {-6.0, -40.0, 60.0, 0.0, 9.708305205678588e-29, -5.766997127743799e-29},
    {0.5, 3.0, 0.2, 0.7, 1.195739257749628, 1.0351771709688222},
    {-2.0, 1e-14, 0.1, 0.0, 0.41629145790827876, 1.830792208630646e-15},
    {-2.0, 0.0, 0.1, 0.0, 0.41629145790827876, 0.0},
    {-2.0, 0.0, 3.0, 0.0, 0.008930646556022725, 0.0},
    {0.0, 0.0, 0.05, 0.0, 2.467898488509974, 0.0},
    {6.0, 100.0, 0.028294880667081166, 0.3989979946416218, 37646338510.00231, -35398109333.092476},
    {6.0, 100.0, 3.5368600833851453, 49.87474933020272, 0.012965192995458641, 0.003465305343086056},
    {-5.0, -100.0, 1.4147440333540582, 19.94989973208109, -0.00175007808399648, -0.0010143022475453754},
    {3.5, 200.0, 3.079145908246612, 99.95258306054791, 0.0028119885753241118, 0.003306123860251957},
    {2.25, -30.0, 1.811788772383368, -4.660195429836132, -0.006368590114101695, 0.0008708016069505813},
};

inline constexpr RealCase kUpperGamma[] = {
    {2.5, 0.0, 1.0, 1.1288027918891024, 0.0},
    {2.5, 0.0, 20.0, 1.985194263947255e-07, 0.0},
    {0.5, 4.0, 0.3, -0.10289183950908003, 0.009510943531483514},
    {6.0, -10.0, 8.0, -9.403676901391291, 1.2442080009549246},
    {-1.5, 0.0, 2.0, 0.011832994103345998, 0.0},
};

inline constexpr RealCase kGDelta[] = {
    {6.0, 0.0, 0.0, -0.003900605524859446, 0.0},
    {6.0, 5.0, 0.0, -0.6572195754140598, 0.06459172071384751},
    {2.5, 20.0, 1.0, 6.572033817587083, -7.753075444731047},
    {0.5, 100.0, 0.0, 0.9998853641896138, 0.01514128394170132},
    {3.0, 0.0, 1.0, 0.0, -0.016125767216599744},
    {7.0, 0.0, 0.0, -1.4887959056860608e-63, 0.0},
};

inline constexpr long long kTau[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944, -577738, 401856, 1217160, 987136, -6905934, 2727432, 10661420, -7109760, -4219488, -12830688, 18643272, 21288960, -25499225, 13865712, -73279080, 24647168, 128406630, -29211840, -52843168, -196706304, 134722224, 165742416, -80873520, 167282496, -182213314, -255874080, -145589976, 408038400};

inline constexpr long long kGCoeffs[] = {1, 2, 0, 0, -4, -12, 0, 0, -3, 20, 0, 0, 28, 8, 0, 0, -8, -42, 0, 0, -72, 20, 0, 0, 29, -36, 0, 0, 84, 72, 0, 0, 24, 40, 0, 0, -68, -36, 0, 0};

inline constexpr CplxPair kDeltaTwist15[] = {
    {0.5, 0.0, 0.8225403556500381, 0.0},
    {0.5, 1.0, -0.12380794124626891, 1.4080151871636308},
    {0.5, 5.0, 0.20682862620270145, 2.165035318126419},
    {0.5, 10.0, 1.0570133713588363, 1.3589462112885742},
    {0.5, 14.5, -0.004485116078534593, 0.001441246981273324},
    {0.5, 25.0, -0.7225361514707798, 2.196573186373921},
    {0.5, 40.0, -0.6522338964392159, -0.08731434736864216},
    {2.0, 3.0, 0.2238397627873561, 0.9148093489462066},
    {-1.0, 2.0, 58.95697605631118, -67.27601448450156},
    {0.75, -6.0, -1.036035113659069, 0.045584886154665064},
};

inline constexpr CplxPair kGTwist116[] = {
    {3.75, 0.0, 0.969587647848625, 0.4243663762198915},
    {3.75, 2.0, 0.9747274318295891, 0.3498857984903571},
};

}  // namespace twistzero::oracle
