"""Exception hierarchy shared across the toolkit.

Everything raised on purpose derives from SpamUrlError so the CLI can map
library failures to exit code 1 with a one-line diagnostic.
"""


class SpamUrlError(Exception):
    pass


class EmptyUrl(SpamUrlError):
    def __init__(self):
        super().__init__("URL is empty after trimming whitespace")


class MissingColumn(SpamUrlError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"required column {name!r} not found in header")


class AllRowsMalformed(SpamUrlError):
    def __init__(self, path):
        super().__init__(f"no usable rows in {path}")


class EmptyDataset(SpamUrlError):
    pass


class DegenerateSplit(SpamUrlError):
    pass


class TooFewExamples(SpamUrlError):
    def __init__(self, label, k):
        self.label = label
        self.k = k
        super().__init__(f"class {label} has too few examples for k={k} folds")


class NonBinaryLabels(SpamUrlError):
    def __init__(self):
        super().__init__("labels must be 0 or 1")


class EmptyTrainingSet(SpamUrlError):
    pass


class NegativeFeature(SpamUrlError):
    def __init__(self):
        super().__init__("multinomial naive Bayes requires non-negative features")


class LengthMismatch(SpamUrlError):
    pass


class EmptyMatrix(SpamUrlError):
    pass


class SingleClassTruth(SpamUrlError):
    def __init__(self):
        super().__init__("y_true must contain both classes")


class EmptySpace(SpamUrlError):
    pass


class ModelFormatError(SpamUrlError):
    pass
