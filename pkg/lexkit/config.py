from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Cutoffs:
    """
    Size and sampling limits shared by checkers, engines and the CLI.

    Attributes:
        max_size: Largest object size (total element count) enumerated.
        samples: Number of random instances drawn after the exhaustive sweep.
        probe_bound: Largest probe domain for carriers with bounded probes.
        budget: Closure rounds for the completion engine.
        seed: Seed of the random instance stream.
        hom_cap: Largest hom-set that engines are willing to enumerate.
    """

    max_size: int = 3
    samples: int = 200
    probe_bound: int = 3
    budget: int = 2
    seed: int = 1
    hom_cap: int = 4096

    def __post_init__(self):
        for name in ("max_size", "samples", "probe_bound", "hom_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.budget < 0:
            raise ValueError("budget must be a non-negative integer")

    def to_json(self) -> dict:
        return asdict(self)
