"""
自定义异常类
提供统一的异常处理
"""


class GAPSolverException(Exception):
    """GAP选址求解器基础异常类"""
    pass


class InstanceLoadError(GAPSolverException):
    """实例文件加载或校验错误（消息中包含字段路径）"""
    pass


class ConfigLoadError(GAPSolverException):
    """配置加载错误"""
    pass


class PlanError(GAPSolverException):
    """方案维度不匹配、基因越界等错误"""
    pass


class DecoderSizeError(GAPSolverException):
    """精确解码器规模超出限制"""
    pass


class OracleSizeError(GAPSolverException):
    """穷举前沿规模超出限制"""
    pass


class AlgorithmNotSupportedError(GAPSolverException):
    """不支持的算法名称"""
    pass


class ConstraintViolationError(GAPSolverException):
    """调试模式下分配方案违反约束"""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class FrontFormatError(GAPSolverException):
    """前沿CSV文件格式错误"""
    pass


class InvalidParameterError(GAPSolverException, ValueError):
    """算法或场景参数不合法"""
    pass
