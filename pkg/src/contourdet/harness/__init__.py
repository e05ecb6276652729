from .generators import gen_random, gen_tasep
from .instance import Instance, InstanceError, io_roundtrip, load_instance, save_instance
from .verify import VerificationReport, VerifyConfig, exit_code, run_suite, verify_identity
