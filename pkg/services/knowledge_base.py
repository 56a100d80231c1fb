class TheoremCatalogue:
    """Static catalogue of the proved size-Ramsey cases for star forests.

    Each entry says which closed form applies, whether the value is proved or
    only conjectured, and whether the Ramsey-minimal graphs are characterised.
    """

    # Priority order used by the classifier; the first matching case wins.
    ORDER = (
        "star-vs-forest",
        "same-size-stars",
        "odd-stars-vs-forest",
        "two-stars-vs-forest",
        "all-odd",
        "gyori-schelp-condition",
        "conjecture-only",
    )

    def __init__(self):

        # =========================================
        # PROVED CASES
        # =========================================
        self.cases = {
            "same-size-stars": {
                "provenance": "theorem",
                "hypothesis": "F1 = sK_{1,n}, F2 = tK_{1,m}",
                "value": "(s+t-1)(n+m-1)",
                "characterized": True,
            },
            "star-vs-forest": {
                "provenance": "theorem",
                "hypothesis": "F1 = K_{1,n}, smallest star of F2 has at least 2 edges",
                "value": "sum_j (n+m_j-1)",
                "characterized": True,
            },
            "odd-stars-vs-forest": {
                "provenance": "theorem",
                "hypothesis": "F1 = sK_{1,n} with n odd, m_1 odd, m_t >= 2",
                "value": "(s-1)(n+m_1-1) + sum_j (n+m_j-1)",
                "characterized": True,
            },
            "two-stars-vs-forest": {
                "provenance": "theorem",
                "hypothesis": "F1 = 2K_{1,n}, m_t >= 2",
                "value": "(n+m_1-1) + sum_j (n+m_j-1)",
                "characterized": False,
            },
            "all-odd": {
                "provenance": "theorem",
                "hypothesis": "every star of F1 and F2 has an odd number of edges",
                "value": "sum_k l_k",
                "characterized": False,
            },
            "gyori-schelp-condition": {
                "provenance": "theorem",
                "hypothesis": "binom(l_k, 2) > sum_{i>=k} l_i for every k",
                "value": "sum_k l_k",
                "characterized": False,
            },
            # =========================================
            # FALLBACK
            # =========================================
            "conjecture-only": {
                "provenance": "conjecture",
                "hypothesis": "no proved case applies",
                "value": "sum_k l_k",
                "characterized": False,
            },
        }

    def get_case(self, name):

        if not name:
            return None

        return self.cases.get(name.lower())

    def provenance(self, name):
        case = self.get_case(name)
        return case["provenance"] if case else "conjecture"

    def has_characterization(self, name):
        case = self.get_case(name)
        return bool(case and case["characterized"])

    def characterized_cases(self):
        return [name for name in self.ORDER if self.cases[name]["characterized"]]
