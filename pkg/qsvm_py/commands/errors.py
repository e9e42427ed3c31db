from qsvm_py.errors import QsvmError


class CommandError(QsvmError):
    error_code = 40


class ConfigError(CommandError):
    pass
