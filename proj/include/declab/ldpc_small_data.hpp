#pragma once

#include <string_view>

namespace declab {

// Fixed (3,6)-regular LDPC parity-check matrix, n=96, m=48, girth >= 6,
// full rank over GF(2). Same text format as data/ldpc_small.txt.
inline constexpr std::string_view kLdpcSmallText =
    "96 48\n"
    "20 22 25 40 71 80\n"
    "5 35 44 81 87 89\n"
    "28 60 65 71 75 76\n"
    "21 23 31 34 35 84\n"
    "0 5 7 12 40 55\n"
    "13 26 51 71 73 94\n"
    "22 31 48 68 74 82\n"
    "10 17 29 44 59 82\n"
    "4 26 43 84 86 91\n"
    "12 27 33 52 78 89\n"
    "3 38 40 77 92 94\n"
    "17 19 33 46 70 88\n"
    "24 25 35 39 46 74\n"
    "5 19 21 29 69 78\n"
    "30 37 43 61 62 83\n"
    "6 8 61 65 67 93\n"
    "14 32 48 73 88 92\n"
    "19 22 23 43 90 95\n"
    "15 17 20 50 53 62\n"
    "32 38 50 58 67 86\n"
    "39 48 51 58 65 80\n"
    "2 37 47 56 59 95\n"
    "13 49 63 75 77 91\n"
    "11 20 56 74 87 91\n"
    "1 7 15 52 58 79\n"
    "11 26 31 66 70 75\n"
    "14 18 41 46 64 69\n"
    "1 36 42 54 88 89\n"
    "3 44 47 53 54 83\n"
    "2 12 16 57 83 94\n"
    "0 9 49 53 69 87\n"
    "7 30 63 66 67 84\n"
    "4 28 42 55 62 92\n"
    "47 55 64 68 86 90\n"
    "16 27 29 37 68 85\n"
    "2 8 18 45 77 85\n"
    "9 18 34 61 78 81\n"
    "4 30 54 56 60 90\n"
    "52 57 66 76 85 93\n"
    "21 24 49 51 79 93\n"
    "0 16 34 36 41 82\n"
    "3 6 9 33 63 95\n"
    "1 6 13 24 50 80\n"
    "11 25 42 45 60 72\n"
    "10 28 32 70 79 81\n"
    "23 27 45 57 64 73\n"
    "8 14 36 59 72 76\n"
    "10 15 38 39 41 72\n"
;

}  // namespace declab
