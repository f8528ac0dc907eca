# 결합 쌍극자 채널 모델 모듈
