from . import ordinal_service, symmetry_service, analysis_service, oracle_service
