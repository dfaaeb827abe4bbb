#pragma once

// Expected values for the shipped fixtures, frozen from independent
// reference implementations (NumPy/SciPy linear algebra and optimization,
// plus closed-form arithmetic) computed before the library existed.
// Tests compare the library against these constants; regenerating them
// from the library's own output would defeat their purpose.

#include <string>
#include <vector>

namespace fixtures {

inline const std::string data_dir = NETMARK_DATA_DIR;
inline const std::string adjacency_path = data_dir + "/aug2000_adjacency.csv";
inline const std::string roster_path = data_dir + "/jun2000_reach.csv";
inline const std::string features_path = data_dir + "/features.csv";

// Roster order shared by every fixture file.
inline const std::vector<std::string> ids = {
    "altavista", "askjeeves", "directhit",     "excite",        "google",
    "goto",      "hotbot",    "go",            "iwon",          "looksmart",
    "lycos",     "msn",       "netscape",      "northernlight", "opendirectory",
    "raging",    "snap",      "webcrawler",    "yahoo"};

// ---- network structure -----------------------------------------------------

constexpr long link_count = 35;
constexpr double density = 0.102339181287;             // 35 / (19*18)
constexpr double density_bernoulli_sd = 0.303093835734;  // sqrt(d(1-d))

inline const std::vector<int> indegree = {6, 1, 2, 4, 2, 1, 4, 3, 0, 1,
                                          3, 1, 1, 2, 0, 0, 0, 1, 3};
inline const std::vector<int> outdegree = {1, 4, 3, 0, 6, 0, 1, 0, 0, 1,
                                           1, 0, 0, 0, 7, 0, 4, 1, 6};
constexpr double mean_degree = 1.842105263158;   // 35/19, both directions
constexpr double sd_indegree = 1.598129100073;   // population formula
constexpr double sd_outdegree = 2.322955420075;

inline const std::vector<double> betweenness_normalized = {
    1.960784313725,  // altavista
    4.248366013072,  // askjeeves
    5.664488017429,  // directhit
    0.0,             // excite
    0.925925925926,  // google
    0.0,             // goto
    0.272331154684,  // hotbot
    0.0,             // go
    0.0,             // iwon
    0.0,             // looksmart
    0.326797385621,  // lycos
    0.0,             // msn
    0.0,             // netscape
    0.0,             // northernlight
    0.0,             // opendirectory
    0.0,             // raging
    0.0,             // snap
    0.0,             // webcrawler
    4.901960784314}; // yahoo
constexpr double betweenness_mean = 0.963192294462;
constexpr double betweenness_sd = 1.797954744758;

inline const std::vector<double> information = {
    1.464391051959,  // altavista
    1.288298982424,  // askjeeves
    1.351878520749,  // directhit
    1.244376211693,  // excite
    1.506739446448,  // google
    0.602928929623,  // goto
    1.265832832077,  // hotbot
    1.149863403240,  // go
    0.0,             // iwon (isolated under edge-union symmetrization)
    0.638883478793,  // looksmart
    1.148981048611,  // lycos
    0.616498343055,  // msn
    0.635510000879,  // netscape
    0.959098683693,  // northernlight
    1.446787686933,  // opendirectory
    0.0,             // raging (isolated)
    1.313456778496,  // snap
    0.889562324605,  // webcrawler
    1.549138254274}; // yahoo
constexpr double information_mean = 1.003801367240;
constexpr double information_sd = 0.460859553974;

// ---- market shares and concentration ---------------------------------------

inline const std::vector<double> reach = {15.2, 1.9,  1.8,  15.1, 2.1,  7.5, 2.0,
                                          19.1, 6.7,  8.7,  15.3, 35.8, 15.4, 1.6,
                                          1.5,  0.1,  8.5,  1.7,  47.0};
constexpr double reach_sum = 207.0;
constexpr double yahoo_share = 0.227053140097;

constexpr double cr4 = 0.566666666667;
constexpr double hhi_value = 1180.377605078298;

// NAHHI over the August network at overlap 0.0, 0.1, ..., 0.9, 1.0.
inline const std::vector<double> nahhi_grid = {
    892.261122945663, 878.372743901234, 864.703281918919, 851.920593654721,
    841.168208749290, 834.425139920029, 835.191112779133, 849.861081026236,
    890.664873587951, 982.482149689980, 1180.377605078298};

// Possible reach at overlap 0.3 (exact decimal arithmetic on the roster).
inline const std::vector<double> possible_reach_03 = {
    63.99, 3.16, 40.65, 25.04, 36.05, 8.83, 48.13, 54.52, 6.70, 19.34,
    19.43, 37.06, 16.45, 35.55, 1.50, 0.10, 8.50, 3.03, 55.47};

constexpr double delta_yahoo_msn = 785.362552218255;
constexpr double delta_yahoo_go = 419.006277859460;
constexpr int flagged_pair_count = 29;

// ---- group comparison (top four by reach vs the rest) ----------------------

inline const std::vector<std::string> top4_reach_ids = {"yahoo", "msn", "go",
                                                        "netscape"};
constexpr double group_mean_in = 2.0;
constexpr double group_mean_out = 1.5;
constexpr double others_mean_in = 1.8;
constexpr double others_mean_out = 1.933333333333;

// ---- regression goldens (independent IRLS / closed-form oracle) ------------

struct LogisticGolden {
    const char* feature;
    double slope;
    double intercept;
    double odds_ratio;
    double lr_statistic;
    double p_value;
    double r2_nagelkerke;
};
inline const std::vector<LogisticGolden> logistic_goldens = {
    {"non_personalized", -1.0305630184, 2059.885905, 0.3568060157, 5.326368,
     0.021005, 0.420035},
    {"personalized", -0.7544899112, 1508.383664, 0.4702504230, 3.562155,
     0.059111, 0.293728},
    {"platform", -0.9968914476, 1993.265850, 0.3690247929, 3.811647, 0.050897,
     0.371098},
};

struct OlsGolden {
    double slope;
    double intercept;
    double t_stat;
    double p_value;
    double r2;
};
inline const OlsGolden ols_golden = {-3.8732804233, 7742.981746, -2.825116,
                                     0.011671, 0.319490};

// ---- distribution tail references (SciPy) -----------------------------------

struct TailRef {
    double stat;
    int df;
    double sf;
};
inline const std::vector<TailRef> chi_square_refs = {
    {0.5, 1, 0.479500122186953},
    {1.0, 1, 0.317310507862911},
    {2.0, 1, 0.157299207050281},
    {3.841458820694124, 1, 0.0499999999999999},
    {5.0, 1, 0.0253473186774683},
    {10.0, 1, 0.00156540225800255},
    {0.0, 1, 1.0},
    {3.841, 1, 0.050013683763956804},
};
inline const std::vector<TailRef> t_refs = {
    {0.0, 5, 0.5},
    {1.0, 5, 0.181608733824561},
    {2.0, 5, 0.0509697394149291},
    {2.571, 5, 0.0249873173419257},
    {1.0, 17, 0.16566638101934},
    {2.11, 17, 0.0249910623560527},
    {3.0, 2, 0.0477329831333546},
    {12.706, 1, 0.0250004011790666},
};

} // namespace fixtures
