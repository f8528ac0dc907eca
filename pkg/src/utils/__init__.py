# 공통 유틸리티 모듈
